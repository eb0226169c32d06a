#pragma once
// Reference computations for the tests. They read raw coefficients and redo the
// arithmetic with plain GMP integers and brute force, sharing no code paths with
// the library beyond the container types.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "valkey/field.hpp"
#include "valkey/poly.hpp"

namespace oracle {

using Coeffs = std::vector<mpq_class>; // low to high

// p-adic order of a nonzero integer by repeated division.
inline long vp(mpz_class n, unsigned long p)
{
    long k = 0;
    n = abs(n);
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

// nullopt stands for an infinite value.
inline std::optional<mpq_class> vp(const mpq_class &q, unsigned long p)
{
    if (q == 0)
        return std::nullopt;
    return mpq_class(vp(q.get_num(), p) - vp(q.get_den(), p));
}

inline Coeffs coeffs(const valkey::Poly &f)
{
    Coeffs c;
    for (const auto &a : f.coeffs())
        c.push_back(a.rational());
    return c;
}

inline void trim(Coeffs &c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

inline Coeffs mul(const Coeffs &a, const Coeffs &b)
{
    if (a.empty() || b.empty())
        return {};
    Coeffs r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline mpq_class horner(const Coeffs &c, const mpq_class &a)
{
    mpq_class r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * a + *it;
    return r;
}

// Schoolbook long division by a monic q: returns (quotient, remainder).
inline std::pair<Coeffs, Coeffs> divide(Coeffs f, const Coeffs &q)
{
    const std::size_t d = q.size() - 1;
    trim(f);
    if (f.size() <= d)
        return {Coeffs{}, f};
    Coeffs quot(f.size() - d, mpq_class(0));
    for (std::size_t k = f.size(); k-- > d;) {
        const mpq_class c = f[k];
        quot[k - d] = c;
        for (std::size_t j = 0; j <= d; ++j)
            f[k - d + j] -= c * q[j];
    }
    f.resize(d);
    trim(f);
    trim(quot);
    return {quot, f};
}

// min_i (vp(c_i) + i·gamma)
inline std::optional<mpq_class> gauss(const Coeffs &c, unsigned long p, const mpq_class &gamma)
{
    std::optional<mpq_class> best;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (auto v = vp(c[i], p)) {
            const mpq_class w = *v + gamma * static_cast<long>(i);
            if (!best || w < *best)
                best = w;
        }
    return best;
}

// One augmentation [Gauss(p, gx); q ↦ gq] over Q: expand in powers of q by
// repeated division and take the minimum.
inline std::optional<mpq_class> augmented(const Coeffs &f, unsigned long p, const mpq_class &gx, const Coeffs &q,
                                          const mpq_class &gq)
{
    std::optional<mpq_class> best;
    Coeffs rest = f;
    trim(rest);
    for (long i = 0; !rest.empty(); ++i) {
        auto [quot, rem] = divide(rest, q);
        if (auto v = gauss(rem, p, gx)) {
            const mpq_class w = *v + gq * i;
            if (!best || w < *best)
                best = w;
        }
        rest = quot;
    }
    return best;
}

inline mpz_class binomial(unsigned n, unsigned k)
{
    // Pascal's triangle row by row.
    std::vector<mpz_class> row{1};
    for (unsigned i = 1; i <= n; ++i) {
        std::vector<mpz_class> next(i + 1, 1);
        for (unsigned j = 1; j < i; ++j)
            next[j] = row[j - 1] + row[j];
        row = next;
    }
    return k <= n ? row[k] : mpz_class(0);
}

// Coefficients of the b-th Hasse derivative over Q.
inline Coeffs hasse(const Coeffs &c, unsigned b)
{
    Coeffs r;
    for (std::size_t n = b; n < c.size(); ++n)
        r.push_back(c[n] * mpq_class(binomial(static_cast<unsigned>(n), b)));
    trim(r);
    return r;
}

// Integer root of g modulo p^n lifted digit by digit from a0 by trying every digit.
inline mpz_class root_mod(const std::vector<long> &g, long a0, unsigned long p, unsigned n)
{
    auto value = [&](const mpz_class &r) {
        mpz_class acc = 0;
        for (auto it = g.rbegin(); it != g.rend(); ++it)
            acc = acc * r + *it;
        return acc;
    };
    mpz_class r = a0, pk = p;
    for (unsigned k = 1; k < n; ++k) {
        const mpz_class next = pk * p;
        bool found = false;
        for (unsigned long d = 0; d < p && !found; ++d) {
            const mpz_class cand = r + d * pk;
            if (value(cand) % next == 0) {
                r = cand;
                found = true;
            }
        }
        if (!found)
            return -1;
        pk = next;
    }
    return r;
}

// ν(f) for the valuation f ↦ vp(f(z)) where z is the p-adic root of g near a0.
// Values at or beyond half the working precision are reported as infinite.
inline std::optional<mpq_class> root_value(const Coeffs &f, const std::vector<long> &g, long a0, unsigned long p,
                                           unsigned precision = 80)
{
    const mpz_class z = root_mod(g, a0, p, precision);
    const auto v = vp(horner(f, mpq_class(z)), p);
    if (!v || *v >= precision / 2)
        return std::nullopt;
    return v;
}

// t-adic order of an F_p(t) element read from raw coefficient vectors.
inline std::optional<long> t_order(const valkey::FieldElem &a)
{
    if (a.is_zero())
        return std::nullopt;
    auto low = [](const std::vector<std::uint32_t> &c) {
        long k = 0;
        while (c[k] == 0)
            ++k;
        return k;
    };
    return low(a.ratfunc().num().coeffs()) - low(a.ratfunc().den().coeffs());
}

} // namespace oracle
