#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "valkey/ext_value.hpp"
#include "valkey/fp_poly.hpp"

namespace valkey {

/// Element of a concrete base field: an exact rational (Q with a p-adic
/// valuation) or a rational function in t over F_p.
class FieldElem {
public:
    FieldElem() : v_(mpq_class(0)) {}
    FieldElem(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    FieldElem(RatFunc r) : v_(std::move(r)) {}

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class &rational() const;
    const RatFunc &ratfunc() const;
    bool is_zero() const;
    bool is_one() const;

    friend FieldElem operator+(const FieldElem &a, const FieldElem &b);
    friend FieldElem operator-(const FieldElem &a, const FieldElem &b);
    friend FieldElem operator*(const FieldElem &a, const FieldElem &b);
    /// Throws MathError on division by zero.
    friend FieldElem operator/(const FieldElem &a, const FieldElem &b);
    FieldElem operator-() const;
    FieldElem &operator+=(const FieldElem &b) { return *this = *this + b; }
    FieldElem &operator-=(const FieldElem &b) { return *this = *this - b; }
    FieldElem &operator*=(const FieldElem &b) { return *this = *this * b; }

    friend bool operator==(const FieldElem &a, const FieldElem &b);

    /// Canonical literal: "5/6", "-7", "t^2/(t+1)".
    std::string str() const;

    /// Deterministic total order used for tie-breaking: simpler elements first.
    friend bool canonical_less(const FieldElem &a, const FieldElem &b);

private:
    std::variant<mpq_class, RatFunc> v_;
};

enum class FieldKind { PAdic, TSeries };

/// Descriptor of the valued base field K: Q with ν_p, or F_p(t) with the t-adic order.
class ValuedField {
public:
    static ValuedField padic(std::uint32_t p);
    static ValuedField tseries(std::uint32_t p);

    FieldKind kind() const { return kind_; }
    std::uint32_t prime() const { return p_; }
    std::uint32_t characteristic() const { return kind_ == FieldKind::PAdic ? 0 : p_; }
    /// 1 in characteristic zero, otherwise the characteristic.
    std::uint32_t exponent_characteristic() const { return kind_ == FieldKind::PAdic ? 1 : p_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(const mpz_class &n) const;
    FieldElem from_int(long n) const { return from_int(mpz_class(n)); }
    /// The uniformizer p (or t) raised to an integer power.
    FieldElem uniformizer_power(long k) const;

    bool contains(const FieldElem &a) const;
    ExtValue val(const FieldElem &a) const;

    /// "qp:3" or "fpt:5".
    std::string str() const;

    friend bool operator==(const ValuedField &, const ValuedField &) = default;

private:
    ValuedField(FieldKind k, std::uint32_t p) : kind_(k), p_(p) {}

    FieldKind kind_;
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// p-adic valuation of a nonzero integer.
long padic_order(const mpz_class &n, std::uint32_t p);

} // namespace valkey
