#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "valkey/field.hpp"

namespace valkey {

/// Dense univariate polynomial over a valued base field, coefficients low to high.
/// The zero polynomial has degree -1.
class Poly {
public:
    explicit Poly(ValuedField field) : field_(field) {}
    Poly(ValuedField field, std::vector<FieldElem> coeffs);

    static Poly x(const ValuedField &F);
    static Poly constant(const ValuedField &F, const FieldElem &a);
    static Poly monomial(const ValuedField &F, const FieldElem &a, unsigned n);
    /// x - a
    static Poly linear(const ValuedField &F, const FieldElem &a);

    const ValuedField &field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const;
    const FieldElem &lead() const;
    FieldElem coeff(std::size_t i) const;
    std::span<const FieldElem> coeffs() const { return c_; }

    Poly monic() const;
    Poly pow(unsigned n) const;

    friend Poly operator+(const Poly &f, const Poly &g);
    friend Poly operator-(const Poly &f, const Poly &g);
    friend Poly operator*(const Poly &f, const Poly &g);
    friend Poly operator*(const FieldElem &a, const Poly &f);
    Poly operator-() const;
    Poly &operator+=(const Poly &g) { return *this = *this + g; }
    Poly &operator*=(const Poly &g) { return *this = *this * g; }

    friend bool operator==(const Poly &f, const Poly &g);

    /// Canonical form: descending powers, explicit signs, e.g. "x^2-2", "6*x^2+3*x".
    std::string str() const;

private:
    void trim();

    ValuedField field_;
    std::vector<FieldElem> c_;
};

/// Canonical enumeration order: by degree, then coefficients from the top down.
bool canonical_less(const Poly &f, const Poly &g);

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// f = q·g + r with deg r < deg g. Throws MathError when g = 0.
DivMod divmod(const Poly &f, const Poly &g);
bool divides(const Poly &g, const Poly &f);

/// The b-th Hasse derivative: x^n ↦ C(n, b)·x^{n-b}, binomials mapped into the field.
Poly hasse_derivative(const Poly &f, unsigned b);

FieldElem eval(const Poly &f, const FieldElem &a);

/// [∂_0 f(a), ∂_1 f(a), ..., ∂_n f(a)] so that f = Σ ∂_i f(a)·(x - a)^i.
std::vector<FieldElem> taylor_expansion(const Poly &f, const FieldElem &a);

/// The q-standard expansion [f_0, ..., f_n] with f = Σ f_i q^i and deg f_i < deg q.
/// Requires q monic of degree >= 1 (InputError otherwise). Zero f gives [0].
std::vector<Poly> q_expansion(const Poly &f, const Poly &q);

/// Σ parts[i]·q^i.
Poly recompose(const std::vector<Poly> &parts, const Poly &q);

struct Irreducibility {
    enum class Verdict { Irreducible, Factor, Unknown };
    Verdict verdict = Verdict::Unknown;
    /// Set for Factor: a verified monic proper divisor.
    std::optional<Poly> factor;
    std::string note;
};

/// Bounded irreducibility test. `budget` caps the coefficient height (Q) or the
/// t-degree of candidate coefficients (F_p(t)) explored by trial division.
Irreducibility irreducible_bounded(const Poly &f, unsigned budget = 64);

std::string to_string(Irreducibility::Verdict v);

} // namespace valkey
