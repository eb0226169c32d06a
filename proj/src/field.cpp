#include "valkey/field.hpp"

#include "valkey/errors.hpp"

namespace valkey {

const mpq_class &FieldElem::rational() const
{
    if (auto *q = std::get_if<mpq_class>(&v_))
        return *q;
    throw MathError("field element is not a rational number");
}

const RatFunc &FieldElem::ratfunc() const
{
    if (auto *r = std::get_if<RatFunc>(&v_))
        return *r;
    throw MathError("field element is not a rational function");
}

bool FieldElem::is_zero() const
{
    return std::visit(
        [](const auto &x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, mpq_class>)
                return sgn(x) == 0;
            else
                return x.is_zero();
        },
        v_);
}

bool FieldElem::is_one() const
{
    if (is_rational())
        return rational() == 1;
    const auto &r = ratfunc();
    return r.num().is_one() && r.den().is_one();
}

namespace {

template <typename Op>
FieldElem combine(const FieldElem &a, const FieldElem &b, Op op)
{
    if (a.is_rational() != b.is_rational())
        throw MathError("field elements from different base fields");
    if (a.is_rational())
        return FieldElem(mpq_class(op(a.rational(), b.rational())));
    if (a.ratfunc().prime() != b.ratfunc().prime())
        throw MathError("field elements from different base fields");
    return FieldElem(op(a.ratfunc(), b.ratfunc()));
}

} // namespace

FieldElem operator+(const FieldElem &a, const FieldElem &b)
{
    return combine(a, b, [](const auto &x, const auto &y) { return x + y; });
}

FieldElem operator-(const FieldElem &a, const FieldElem &b)
{
    return combine(a, b, [](const auto &x, const auto &y) { return x - y; });
}

FieldElem operator*(const FieldElem &a, const FieldElem &b)
{
    return combine(a, b, [](const auto &x, const auto &y) { return x * y; });
}

FieldElem operator/(const FieldElem &a, const FieldElem &b)
{
    if (b.is_zero())
        throw MathError("division by zero");
    return combine(a, b, [](const auto &x, const auto &y) { return x / y; });
}

FieldElem FieldElem::operator-() const
{
    if (is_rational())
        return FieldElem(mpq_class(-rational()));
    return FieldElem(-ratfunc());
}

bool operator==(const FieldElem &a, const FieldElem &b)
{
    if (a.is_rational() != b.is_rational())
        return false;
    if (a.is_rational())
        return a.rational() == b.rational();
    return a.ratfunc() == b.ratfunc();
}

std::string FieldElem::str() const
{
    if (is_rational())
        return rational().get_str();
    return ratfunc().str();
}

bool canonical_less(const FieldElem &a, const FieldElem &b)
{
    if (a.is_rational() && b.is_rational()) {
        const mpq_class &x = a.rational(), &y = b.rational();
        mpz_class hx = abs(x.get_num()) + x.get_den(), hy = abs(y.get_num()) + y.get_den();
        if (x == 0 || y == 0)
            return x == 0 && y != 0;
        if (hx != hy)
            return hx < hy;
        if (sgn(x) != sgn(y))
            return sgn(x) > 0;
        return x < y;
    }
    if (!a.is_rational() && !b.is_rational()) {
        const RatFunc &x = a.ratfunc(), &y = b.ratfunc();
        if (x.is_zero() != y.is_zero())
            return x.is_zero();
        int hx = x.num().degree() + x.den().degree(), hy = y.num().degree() + y.den().degree();
        if (hx != hy)
            return hx < hy;
        if (!(x.den() == y.den()))
            return lex_less(x.den(), y.den());
        return lex_less(x.num(), y.num());
    }
    return a.is_rational();
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

long padic_order(const mpz_class &n, std::uint32_t p)
{
    if (n == 0)
        throw MathError("p-adic order of zero");
    mpz_class m = n;
    return static_cast<long>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

ValuedField ValuedField::padic(std::uint32_t p)
{
    if (!is_prime(p))
        throw InputError("not a prime: " + std::to_string(p));
    return ValuedField(FieldKind::PAdic, p);
}

ValuedField ValuedField::tseries(std::uint32_t p)
{
    if (!is_prime(p))
        throw InputError("not a prime: " + std::to_string(p));
    if (p > (1u << 30))
        throw InputError("characteristic too large for F_p(t): " + std::to_string(p));
    return ValuedField(FieldKind::TSeries, p);
}

FieldElem ValuedField::zero() const { return from_int(0); }
FieldElem ValuedField::one() const { return from_int(1); }

FieldElem ValuedField::from_int(const mpz_class &n) const
{
    if (kind_ == FieldKind::PAdic)
        return FieldElem(mpq_class(n));
    mpz_class r = n % p_;
    if (r < 0)
        r += p_;
    return FieldElem(RatFunc(FpPoly(p_, {static_cast<std::uint32_t>(r.get_ui())})));
}

FieldElem ValuedField::uniformizer_power(long k) const
{
    const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    FieldElem u;
    if (kind_ == FieldKind::PAdic) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p_, e);
        u = FieldElem(mpq_class(pk));
    } else {
        u = FieldElem(RatFunc(FpPoly::t_power(p_, static_cast<unsigned>(e))));
    }
    return k < 0 ? one() / u : u;
}

bool ValuedField::contains(const FieldElem &a) const
{
    if (kind_ == FieldKind::PAdic)
        return a.is_rational();
    return !a.is_rational() && a.ratfunc().prime() == p_;
}

ExtValue ValuedField::val(const FieldElem &a) const
{
    if (!contains(a))
        throw MathError("element " + a.str() + " is not in " + str());
    if (a.is_zero())
        return ExtValue::inf();
    if (kind_ == FieldKind::PAdic) {
        const mpq_class &q = a.rational();
        return ExtValue(padic_order(q.get_num(), p_) - padic_order(q.get_den(), p_));
    }
    return ExtValue(a.ratfunc().t_order());
}

std::string ValuedField::str() const
{
    return (kind_ == FieldKind::PAdic ? "qp:" : "fpt:") + std::to_string(p_);
}

} // namespace valkey
