#pragma once

#include <compare>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace valkey {

/// An element of Q ∪ {∞}, the codomain of every valuation in the library.
///
/// Finite values are kept canonical (lowest terms, positive denominator).
/// INF is the unique maximum and absorbs addition.
class ExtValue {
public:
    ExtValue() : q_(mpq_class(0)) {}
    ExtValue(long n) : q_(mpq_class(n)) {}
    ExtValue(int n) : q_(mpq_class(n)) {}
    ExtValue(mpq_class q);

    static ExtValue inf();

    bool is_inf() const { return !q_.has_value(); }
    bool is_finite() const { return q_.has_value(); }

    /// Throws MathError on INF.
    const mpq_class &rational() const;

    /// "3/2", "-1", "inf".
    std::string str() const;

    friend bool operator==(const ExtValue &a, const ExtValue &b);
    friend std::strong_ordering operator<=>(const ExtValue &a, const ExtValue &b);

    friend ExtValue operator+(const ExtValue &a, const ExtValue &b);
    ExtValue &operator+=(const ExtValue &b);

    /// a - b; b must be finite. INF - finite = INF.
    friend ExtValue operator-(const ExtValue &a, const ExtValue &b);

    /// k·v. INF·k = INF for k > 0, and INF·0 = 0 (the value of q^0 = 1).
    ExtValue scaled(long k) const;

    /// v / b for b >= 1. INF / b = INF.
    ExtValue divided(unsigned long b) const;

private:
    std::optional<mpq_class> q_;
};

inline const ExtValue &min(const ExtValue &a, const ExtValue &b) { return b < a ? b : a; }
inline const ExtValue &max(const ExtValue &a, const ExtValue &b) { return a < b ? b : a; }

/// (num - den) / b where either side may be INF. Returns nullopt when the
/// difference is undefined or is -∞ (den = INF), matching the convention that such
/// ratios never attain a maximum.
std::optional<ExtValue> ratio(const ExtValue &num, const ExtValue &den, unsigned long b);

} // namespace valkey
