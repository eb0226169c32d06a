#include <algorithm>
#include <cmath>
#include <numeric>

#include "valkey/errors.hpp"
#include "valkey/poly.hpp"

namespace valkey {

namespace {

using Verdict = Irreducibility::Verdict;

Irreducibility factor_result(const Poly &g, std::string note)
{
    return {Verdict::Factor, g.monic(), std::move(note)};
}

// Positive divisors of |n|, or nullopt when n is too large to factor by trial division.
std::optional<std::vector<mpz_class>> divisors(const mpz_class &n)
{
    mpz_class m = abs(n);
    if (m == 0 || m > mpz_class("1000000000000"))
        return std::nullopt;
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            small.push_back(d);
            if (d * d != m)
                large.push_back(m / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Primitive integer polynomial with the same roots as f over Q.
std::vector<mpz_class> primitive_integer(const Poly &f)
{
    mpz_class l = 1;
    for (const auto &c : f.coeffs())
        l = lcm(l, mpz_class(c.rational().get_den()));
    std::vector<mpz_class> out;
    mpz_class content = 0;
    for (const auto &c : f.coeffs()) {
        mpz_class v = mpz_class(c.rational() * l);
        content = gcd(content, v);
        out.push_back(v);
    }
    for (auto &v : out)
        v /= content;
    return out;
}

Poly from_integers(const ValuedField &F, const std::vector<mpz_class> &c)
{
    std::vector<FieldElem> e;
    for (const auto &v : c)
        e.push_back(F.from_int(v));
    return Poly(F, std::move(e));
}

Irreducibility padic_test(const Poly &f, unsigned budget)
{
    const ValuedField &F = f.field();
    const int n = f.degree();
    auto P = primitive_integer(f);
    auto d0 = divisors(P.front());
    auto dn = divisors(P.back());
    bool root_test_complete = d0 && dn;
    if (root_test_complete) {
        for (const auto &num : *d0)
            for (const auto &den : *dn)
                for (int s : {1, -1}) {
                    FieldElem r(mpq_class(s * num, den));
                    if (eval(f, r).is_zero())
                        return factor_result(Poly::linear(F, r), "rational root " + r.str());
                }
        if (n <= 3)
            return {Verdict::Irreducible, std::nullopt, "degree <= 3 without rational roots"};
    }
    // Trial division by integer polynomials of degree 2..n/2 with bounded middle coefficients.
    mpz_class norm2 = 0;
    for (const auto &c : P)
        norm2 += c * c;
    mpz_class norm = sqrt(norm2) + 1;
    bool exhaustive = root_test_complete;
    for (int k = 2; k <= n / 2; ++k) {
        mpz_class mignotte = norm << k;
        long H = static_cast<long>(budget);
        if (mignotte <= H)
            H = mignotte.get_si();
        else
            exhaustive = false;
        if (!d0 || !dn)
            return {Verdict::Unknown, std::nullopt, "coefficients too large for divisor enumeration"};
        const int middle = k - 1;
        double combos = std::pow(2.0 * H + 1, middle) * d0->size() * dn->size() * 2;
        if (combos > 5e6)
            return {Verdict::Unknown, std::nullopt, "trial-division space exceeds budget"};
        std::vector<long> mid(middle, -H);
        for (;;) {
            for (const auto &lc : *dn)
                for (const auto &cc : *d0)
                    for (int s : {1, -1}) {
                        std::vector<mpz_class> g(k + 1);
                        g[0] = s * cc;
                        for (int j = 0; j < middle; ++j)
                            g[j + 1] = mid[j];
                        g[k] = lc;
                        Poly gp = from_integers(F, g);
                        if (divides(gp, f))
                            return factor_result(gp, "trial division");
                    }
            int j = 0;
            while (j < middle && mid[j] == H)
                mid[j++] = -H;
            if (j == middle)
                break;
            ++mid[j];
        }
    }
    if (exhaustive)
        return {Verdict::Irreducible, std::nullopt, "exhaustive within the Mignotte bound"};
    return {Verdict::Unknown, std::nullopt, "no factor within the coefficient-height budget"};
}

// All monic polynomials over F_p of degree <= d, or nullopt if there are too many.
std::optional<std::vector<FpPoly>> monic_up_to(std::uint32_t p, int d)
{
    double count = 0;
    for (int k = 0; k <= d; ++k)
        count += std::pow(double(p), k);
    if (count > 2e5)
        return std::nullopt;
    std::vector<FpPoly> out;
    for (int k = 0; k <= d; ++k) {
        std::vector<std::uint32_t> c(k + 1, 0);
        c[k] = 1;
        for (;;) {
            out.emplace_back(p, c);
            int j = 0;
            while (j < k && c[j] == p - 1)
                c[j++] = 0;
            if (j == k)
                break;
            ++c[j];
        }
    }
    return out;
}

Irreducibility tseries_test(const Poly &f, unsigned budget)
{
    const ValuedField &F = f.field();
    const std::uint32_t p = F.prime();
    const int n = f.degree();
    // clear denominators so coefficients lie in F_p[t]
    FpPoly l = FpPoly::constant(p, 1);
    for (const auto &c : f.coeffs()) {
        const FpPoly &den = c.ratfunc().den();
        l = divmod(l * den, gcd(l, den)).first;
    }
    std::vector<FpPoly> P;
    for (const auto &c : f.coeffs()) {
        RatFunc scaled = c.ratfunc() * RatFunc(l);
        P.push_back(scaled.num());
    }
    auto monic_divisors = [&](const FpPoly &a) -> std::optional<std::vector<FpPoly>> {
        auto all = monic_up_to(p, a.degree());
        if (!all)
            return std::nullopt;
        std::vector<FpPoly> out;
        for (auto &d : *all)
            if (divmod(a, d).second.is_zero())
                out.push_back(d);
        return out;
    };
    auto d0 = monic_divisors(P.front());
    auto dn = monic_divisors(P.back());
    if (d0 && dn) {
        for (const auto &num : *d0)
            for (const auto &den : *dn)
                for (std::uint32_t u = 1; u < p; ++u) {
                    FieldElem r(RatFunc(num.scaled(u), den));
                    if (eval(f, r).is_zero())
                        return factor_result(Poly::linear(F, r), "rational root " + r.str());
                }
        if (n <= 3)
            return {Verdict::Irreducible, std::nullopt, "degree <= 3 without roots in F_p(t)"};
    }
    // Bounded trial division by monic factors whose coefficients are t-polynomials.
    const int tdeg = static_cast<int>(std::min<unsigned>(budget, 2));
    auto coeff_pool = monic_up_to(p, tdeg);
    if (!coeff_pool)
        return {Verdict::Unknown, std::nullopt, "coefficient space exceeds budget"};
    std::vector<FieldElem> pool{F.zero()};
    for (auto &c : *coeff_pool)
        for (std::uint32_t u = 1; u < p; ++u)
            pool.emplace_back(RatFunc(c.scaled(u)));
    for (int k = 2; k <= n / 2; ++k) {
        if (std::pow(double(pool.size()), k) > 2e5)
            break;
        std::vector<std::size_t> idx(k, 0);
        for (;;) {
            std::vector<FieldElem> c;
            for (auto i : idx)
                c.push_back(pool[i]);
            c.push_back(F.one());
            Poly g(F, std::move(c));
            if (divides(g, f))
                return factor_result(g, "trial division");
            int j = 0;
            while (j < k && idx[j] + 1 == pool.size())
                idx[j++] = 0;
            if (j == k)
                break;
            ++idx[j];
        }
    }
    return {Verdict::Unknown, std::nullopt, "no factor within the t-degree budget"};
}

} // namespace

Irreducibility irreducible_bounded(const Poly &f, unsigned budget)
{
    if (f.degree() < 1)
        throw InputError("irreducibility test needs degree >= 1");
    if (f.degree() == 1)
        return {Verdict::Irreducible, std::nullopt, "linear"};
    if (f.coeff(0).is_zero())
        return factor_result(Poly::x(f.field()), "divisible by x");
    if (f.field().kind() == FieldKind::PAdic)
        return padic_test(f, budget);
    return tseries_test(f, budget);
}

} // namespace valkey
