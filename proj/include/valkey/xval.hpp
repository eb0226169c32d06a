#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "valkey/generator.hpp"
#include "valkey/poly.hpp"

namespace valkey {

/// A valuation ν on K[x] extending the valuation of the base field.
///
/// Four representations:
///  - Gauss: ν(Σ a_i x^i) = min(ν(a_i) + i·γ_x)
///  - Augmented [μ; Q ↦ γ]: ν(f) = min(μ(f_i) + i·γ) over the Q-expansion of f
///  - Root: ν(f) = ν(f(z)) for the Hensel root z of g; ν(f) = INF iff g | f
///  - Limit: ν(f) = ν(f(z)) for the limit z of an arbitrary generator
///
/// Values are cheap to copy; nodes are shared and immutable. Root and Limit
/// evaluations deepen the generator on demand, which is internally serialized.
class XValuation {
public:
    enum class Kind { Gauss, Augmented, Root, Limit };

    static constexpr unsigned default_precision_cap = 64;

    static XValuation gauss(const ValuedField &F, const ExtValue &gamma_x);
    /// Q must be monic of degree >= 1 over the same field. Other construction
    /// constraints are reported by validate_structure rather than thrown.
    static XValuation augmented(const XValuation &pred, const Poly &Q, const ExtValue &gamma);
    static XValuation root(const ValuedField &F, const Poly &g, const FieldElem &a0,
                           unsigned precision_cap = default_precision_cap);
    static XValuation limit(const PcsGenerator &gen, unsigned precision_cap = default_precision_cap);

    Kind kind() const;
    const ValuedField &field() const;

    /// Throws InputError on a field mismatch and BudgetExhausted when a Root or
    /// Limit value cannot be certified within the precision cap.
    ExtValue operator()(const Poly &f) const;
    ExtValue operator()(const FieldElem &a) const;

    /// Gauss: γ_x. Augmented: γ.
    const ExtValue &gamma() const;
    /// Augmented only.
    const XValuation &predecessor() const;
    /// Augmented: Q. Root: g.
    const Poly &key() const;
    /// Root and Limit.
    const std::optional<PcsGenerator> &generator() const;
    unsigned precision_cap() const;

    /// [(x, γ_x), (Q_1, γ_1), ...] from the Gauss root outward. Unsupported for
    /// Root and Limit.
    std::vector<std::pair<Poly, ExtValue>> chain() const;

    /// Canonical descriptor; parse_valuation(descriptor()) reproduces *this.
    std::string descriptor() const;

private:
    struct Node;
    explicit XValuation(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// Looks for monic f, g with deg f + deg g = degree, coefficients on the default
/// grid plus the residue digits 1..p-1, and ν(fg) != ν(f) + ν(g).
std::optional<std::pair<Poly, Poly>> multiplicativity_probe(const XValuation &V, int degree,
                                                           std::size_t budget = 20000);

/// Construction constraints that need no key-polynomial search: ν(x) >= 0,
/// strictly increasing augmentations, non-decreasing key degrees, a field
/// match, a multiplicativity probe at each augmentation key, and bounded
/// irreducibility of a root polynomial. Empty when well formed.
std::vector<std::string> validate_structure(const XValuation &V);

/// `gauss:<field>:<gamma>`, `aug:(<descriptor>);Q=<poly>;g=<value>`,
/// `root:<field>;g=<poly>;a0=<elem>`, `limit:(<generator>)`.
XValuation parse_valuation(std::string_view s);

} // namespace valkey
