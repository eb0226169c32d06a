#include "valkey/poly.hpp"

#include <algorithm>

#include "valkey/errors.hpp"

namespace valkey {

namespace {

void check_field(const Poly &f, const Poly &g)
{
    if (!(f.field() == g.field()))
        throw MathError("polynomials over different base fields: " + f.field().str() + " vs " +
                        g.field().str());
}

} // namespace

Poly::Poly(ValuedField field, std::vector<FieldElem> coeffs) : field_(field), c_(std::move(coeffs))
{
    for (const auto &c : c_)
        if (!field_.contains(c))
            throw MathError("coefficient " + c.str() + " is not in " + field_.str());
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Poly Poly::x(const ValuedField &F) { return Poly(F, {F.zero(), F.one()}); }

Poly Poly::constant(const ValuedField &F, const FieldElem &a) { return Poly(F, {a}); }

Poly Poly::monomial(const ValuedField &F, const FieldElem &a, unsigned n)
{
    std::vector<FieldElem> c(n + 1, F.zero());
    c[n] = a;
    return Poly(F, std::move(c));
}

Poly Poly::linear(const ValuedField &F, const FieldElem &a) { return Poly(F, {-a, F.one()}); }

bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

const FieldElem &Poly::lead() const
{
    if (c_.empty())
        throw MathError("leading coefficient of the zero polynomial");
    return c_.back();
}

FieldElem Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    return (field_.one() / lead()) * *this;
}

Poly Poly::pow(unsigned n) const
{
    Poly r = constant(field_, field_.one()), base = *this;
    while (n) {
        if (n & 1)
            r = r * base;
        n >>= 1;
        if (n)
            base = base * base;
    }
    return r;
}

Poly operator+(const Poly &f, const Poly &g)
{
    check_field(f, g);
    std::vector<FieldElem> c(std::max(f.c_.size(), g.c_.size()), f.field_.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < f.c_.size())
            c[i] = f.c_[i];
        if (i < g.c_.size())
            c[i] += g.c_[i];
    }
    return Poly(f.field_, std::move(c));
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto &c : r.c_)
        c = -c;
    return r;
}

Poly operator-(const Poly &f, const Poly &g) { return f + (-g); }

Poly operator*(const Poly &f, const Poly &g)
{
    check_field(f, g);
    if (f.is_zero() || g.is_zero())
        return Poly(f.field_);
    std::vector<FieldElem> c(f.c_.size() + g.c_.size() - 1, f.field_.zero());
    for (std::size_t i = 0; i < f.c_.size(); ++i) {
        if (f.c_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < g.c_.size(); ++j)
            c[i + j] += f.c_[i] * g.c_[j];
    }
    return Poly(f.field_, std::move(c));
}

Poly operator*(const FieldElem &a, const Poly &f)
{
    std::vector<FieldElem> c(f.c_);
    for (auto &x : c)
        x *= a;
    return Poly(f.field_, std::move(c));
}

bool operator==(const Poly &f, const Poly &g)
{
    return f.field_ == g.field_ && f.c_ == g.c_;
}

std::string Poly::str() const
{
    if (is_zero())
        return "0";
    const bool rational = field_.kind() == FieldKind::PAdic;
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const FieldElem &c = c_[i];
        if (c.is_zero())
            continue;
        std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        std::string coef;
        bool negative = false;
        if (rational) {
            mpq_class q = c.rational();
            negative = sgn(q) < 0;
            if (negative)
                q = -q;
            coef = q.get_str();
        } else {
            coef = c.str();
            if (coef.find('+') != std::string::npos || coef.find('/') != std::string::npos)
                coef = "(" + coef + ")";
        }
        std::string term;
        if (mono.empty())
            term = coef;
        else if (coef == "1")
            term = mono;
        else
            term = coef + "*" + mono;
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += (negative ? "-" : "+") + term;
    }
    return out;
}

bool canonical_less(const Poly &f, const Poly &g)
{
    if (f.degree() != g.degree())
        return f.degree() < g.degree();
    for (int i = f.degree(); i >= 0; --i) {
        const auto a = f.coeff(i), b = g.coeff(i);
        if (canonical_less(a, b))
            return true;
        if (canonical_less(b, a))
            return false;
    }
    return false;
}

DivMod divmod(const Poly &f, const Poly &g)
{
    check_field(f, g);
    if (g.is_zero())
        throw MathError("division by the zero polynomial");
    const ValuedField &F = f.field();
    if (f.degree() < g.degree())
        return {Poly(F), f};
    std::vector<FieldElem> q(f.degree() - g.degree() + 1, F.zero());
    std::vector<FieldElem> r(f.coeffs().begin(), f.coeffs().end());
    const FieldElem inv = F.one() / g.lead();
    const bool monic = g.lead().is_one();
    const int dg = g.degree();
    for (int k = f.degree(); k >= dg; --k) {
        if (r[k].is_zero())
            continue;
        const FieldElem factor = monic ? r[k] : r[k] * inv;
        q[k - dg] = factor;
        for (int j = 0; j <= dg; ++j)
            r[k - dg + j] -= factor * g.coeffs()[j];
    }
    r.resize(dg);
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

bool divides(const Poly &g, const Poly &f) { return divmod(f, g).remainder.is_zero(); }

Poly hasse_derivative(const Poly &f, unsigned b)
{
    const ValuedField &F = f.field();
    if (b == 0)
        return f;
    if (f.degree() < static_cast<int>(b))
        return Poly(F);
    std::vector<FieldElem> c(f.degree() - b + 1, F.zero());
    mpz_class binom;
    for (int n = b; n <= f.degree(); ++n) {
        const FieldElem &a = f.coeffs()[n];
        if (a.is_zero())
            continue;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), b);
        c[n - b] = F.from_int(binom) * a;
    }
    return Poly(F, std::move(c));
}

FieldElem eval(const Poly &f, const FieldElem &a)
{
    FieldElem acc = f.field().zero();
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * a + f.coeffs()[i];
    return acc;
}

std::vector<FieldElem> taylor_expansion(const Poly &f, const FieldElem &a)
{
    // repeated synthetic division by (x - a)
    const ValuedField &F = f.field();
    if (f.is_zero())
        return {F.zero()};
    std::vector<FieldElem> c(f.coeffs().begin(), f.coeffs().end());
    const int n = f.degree();
    std::vector<FieldElem> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        for (int i = n - 1; i >= k; --i)
            c[i] += a * c[i + 1];
        out.push_back(c[k]);
    }
    return out;
}

std::vector<Poly> q_expansion(const Poly &f, const Poly &q)
{
    if (q.degree() < 1 || !q.is_monic())
        throw InputError("expansion base must be monic of degree >= 1: " + q.str());
    check_field(f, q);
    if (f.is_zero())
        return {Poly(f.field())};
    std::vector<Poly> parts;
    Poly rest = f;
    while (!rest.is_zero()) {
        auto [quo, rem] = divmod(rest, q);
        parts.push_back(std::move(rem));
        rest = std::move(quo);
    }
    return parts;
}

Poly recompose(const std::vector<Poly> &parts, const Poly &q)
{
    Poly acc(q.field());
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        acc = acc * q + *it;
    return acc;
}

std::string to_string(Irreducibility::Verdict v)
{
    switch (v) {
    case Irreducibility::Verdict::Irreducible:
        return "irreducible";
    case Irreducibility::Verdict::Factor:
        return "factor";
    case Irreducibility::Verdict::Unknown:
        return "unknown";
    }
    return "unknown";
}

} // namespace valkey
