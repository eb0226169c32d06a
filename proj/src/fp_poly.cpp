#include "valkey/fp_poly.hpp"

#include <algorithm>
#include <tuple>

#include "valkey/errors.hpp"

namespace valkey {

namespace {

std::uint32_t addm(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<std::uint32_t>(s % p);
}

std::uint32_t mulm(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
}

void check_same(const FpPoly &a, const FpPoly &b)
{
    if (a.prime() != b.prime())
        throw MathError("F_p[t] operands over different primes");
}

} // namespace

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p)
{
    if (a % p == 0)
        throw MathError("inverse of zero in F_p");
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto &c : c_)
        c %= p_;
    trim();
}

FpPoly FpPoly::constant(std::uint32_t p, long c)
{
    long r = c % static_cast<long>(p);
    if (r < 0)
        r += p;
    return FpPoly(p, {static_cast<std::uint32_t>(r)});
}

FpPoly FpPoly::t_power(std::uint32_t p, unsigned k)
{
    std::vector<std::uint32_t> c(k + 1, 0);
    c[k] = 1;
    return FpPoly(p, std::move(c));
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

int FpPoly::order() const
{
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            return static_cast<int>(i);
    return -1;
}

FpPoly FpPoly::monic() const
{
    if (is_zero())
        return *this;
    return scaled(fp_inverse(lead(), p_));
}

FpPoly FpPoly::scaled(std::uint32_t s) const
{
    FpPoly r(p_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = mulm(c_[i], s % p_, p_);
    r.trim();
    return r;
}

FpPoly operator+(const FpPoly &a, const FpPoly &b)
{
    check_same(a, b);
    FpPoly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = addm(a.coeff(i), b.coeff(i), a.p_);
    r.trim();
    return r;
}

FpPoly FpPoly::operator-() const
{
    FpPoly r(p_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = c_[i] == 0 ? 0 : p_ - c_[i];
    return r;
}

FpPoly operator-(const FpPoly &a, const FpPoly &b) { return a + (-b); }

FpPoly operator*(const FpPoly &a, const FpPoly &b)
{
    check_same(a, b);
    FpPoly r(a.p_);
    if (a.is_zero() || b.is_zero())
        return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = addm(r.c_[i + j], mulm(a.c_[i], b.c_[j], a.p_), a.p_);
    }
    r.trim();
    return r;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly &a, const FpPoly &b)
{
    check_same(a, b);
    if (b.is_zero())
        throw MathError("division by zero polynomial in F_p[t]");
    const std::uint32_t p = a.p_;
    FpPoly q(p), r = a;
    if (a.degree() < b.degree())
        return {q, r};
    q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
    const std::uint32_t inv = fp_inverse(b.lead(), p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int shift = r.degree() - b.degree();
        const std::uint32_t f = mulm(r.lead(), inv, p);
        q.c_[shift] = f;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            auto &slot = r.c_[j + shift];
            slot = addm(slot, p - mulm(f, b.c_[j], p), p);
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

FpPoly gcd(FpPoly a, FpPoly b)
{
    check_same(a, b);
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string FpPoly::str() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const std::uint32_t c = c_[i];
        if (c == 0)
            continue;
        if (!out.empty())
            out += '+';
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1)
            out += std::to_string(c) + "*";
        out += "t";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

bool lex_less(const FpPoly &a, const FpPoly &b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c_[i] != b.c_[i])
            return a.c_[i] < b.c_[i];
    return false;
}

RatFunc::RatFunc(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.prime(), 1)) {}

RatFunc::RatFunc(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den))
{
    check_same(num_, den_);
    if (den_.is_zero())
        throw MathError("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize()
{
    const std::uint32_t p = num_.prime();
    if (num_.is_zero()) {
        den_ = FpPoly::constant(p, 1);
        return;
    }
    FpPoly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    const std::uint32_t inv = fp_inverse(den_.lead(), p);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

long RatFunc::t_order() const
{
    if (is_zero())
        throw MathError("t-order of zero");
    return static_cast<long>(num_.order()) - den_.order();
}

RatFunc operator+(const RatFunc &a, const RatFunc &b)
{
    if (a.den_ == b.den_)
        return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b)
{
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b)
{
    if (b.is_zero())
        throw MathError("division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const
{
    auto wrap = [](const FpPoly &f) {
        const auto &c = f.coeffs();
        int terms = static_cast<int>(std::count_if(c.begin(), c.end(), [](auto v) { return v != 0; }));
        std::string s = f.str();
        // a single monomial c*t^k still needs grouping when it carries a factor
        return terms > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
    };
    if (den_.is_one())
        return num_.str();
    return wrap(num_) + "/" + wrap(den_);
}

} // namespace valkey
