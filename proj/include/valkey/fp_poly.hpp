#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace valkey {

/// Dense polynomial in t over the prime field F_p. Coefficients are stored
/// low-to-high in [0, p) with no trailing zeros.
class FpPoly {
public:
    FpPoly() = default;
    explicit FpPoly(std::uint32_t p) : p_(p) {}
    FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

    static FpPoly constant(std::uint32_t p, long c);
    static FpPoly t_power(std::uint32_t p, unsigned k);

    std::uint32_t prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint32_t> &coeffs() const { return c_; }

    /// Lowest index with a nonzero coefficient (the t-adic order); -1 for zero.
    int order() const;

    FpPoly monic() const;
    FpPoly scaled(std::uint32_t s) const;

    friend FpPoly operator+(const FpPoly &a, const FpPoly &b);
    friend FpPoly operator-(const FpPoly &a, const FpPoly &b);
    friend FpPoly operator*(const FpPoly &a, const FpPoly &b);
    FpPoly operator-() const;
    friend bool operator==(const FpPoly &a, const FpPoly &b) = default;

    friend std::pair<FpPoly, FpPoly> divmod(const FpPoly &a, const FpPoly &b);
    friend FpPoly gcd(FpPoly a, FpPoly b);

    /// "2*t^2+t+1"; "0" for zero.
    std::string str() const;

    /// Total order used only for canonical enumeration.
    friend bool lex_less(const FpPoly &a, const FpPoly &b);

private:
    void trim();

    std::uint32_t p_ = 0;
    std::vector<std::uint32_t> c_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

/// Element of F_p(t) in canonical form: coprime numerator and monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(FpPoly num);
    RatFunc(FpPoly num, FpPoly den);

    std::uint32_t prime() const { return num_.prime(); }
    const FpPoly &num() const { return num_; }
    const FpPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// ord_t(num) - ord_t(den). Undefined for zero.
    long t_order() const;

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
    RatFunc operator-() const;
    friend bool operator==(const RatFunc &a, const RatFunc &b) = default;

    std::string str() const;

private:
    void normalize();

    FpPoly num_;
    FpPoly den_;
};

} // namespace valkey
