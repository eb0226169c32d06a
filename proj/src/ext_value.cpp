#include "valkey/ext_value.hpp"

#include "valkey/errors.hpp"

namespace valkey {

ExtValue::ExtValue(mpq_class q) : q_(std::move(q)) { q_->canonicalize(); }

ExtValue ExtValue::inf()
{
    ExtValue v;
    v.q_.reset();
    return v;
}

const mpq_class &ExtValue::rational() const
{
    if (!q_)
        throw MathError("rational() called on INF");
    return *q_;
}

std::string ExtValue::str() const { return q_ ? q_->get_str() : std::string("inf"); }

bool operator==(const ExtValue &a, const ExtValue &b)
{
    if (a.is_inf() || b.is_inf())
        return a.is_inf() && b.is_inf();
    return *a.q_ == *b.q_;
}

std::strong_ordering operator<=>(const ExtValue &a, const ExtValue &b)
{
    if (a.is_inf())
        return b.is_inf() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (b.is_inf())
        return std::strong_ordering::less;
    int c = cmp(*a.q_, *b.q_);
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExtValue operator+(const ExtValue &a, const ExtValue &b)
{
    if (a.is_inf() || b.is_inf())
        return ExtValue::inf();
    return ExtValue(mpq_class(*a.q_ + *b.q_));
}

ExtValue &ExtValue::operator+=(const ExtValue &b)
{
    *this = *this + b;
    return *this;
}

ExtValue operator-(const ExtValue &a, const ExtValue &b)
{
    if (b.is_inf())
        throw MathError("cannot subtract INF");
    if (a.is_inf())
        return ExtValue::inf();
    return ExtValue(mpq_class(*a.q_ - *b.q_));
}

ExtValue ExtValue::scaled(long k) const
{
    if (is_inf()) {
        if (k < 0)
            throw MathError("cannot scale INF by a negative integer");
        return k == 0 ? ExtValue(0) : inf();
    }
    return ExtValue(mpq_class(*q_ * k));
}

ExtValue ExtValue::divided(unsigned long b) const
{
    if (b == 0)
        throw MathError("division of a value by zero");
    if (is_inf())
        return inf();
    return ExtValue(mpq_class(*q_ / b));
}

std::optional<ExtValue> ratio(const ExtValue &num, const ExtValue &den, unsigned long b)
{
    if (den.is_inf())
        return std::nullopt;
    return (num - den).divided(b);
}

} // namespace valkey
