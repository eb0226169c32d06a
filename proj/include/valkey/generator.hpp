#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valkey/poly.hpp"

namespace valkey {

enum class SeriesRule {
    Geom,        ///< a_ρ = Σ_{i≤ρ} u^i; the limit 1/(1-u) lies in K
    GeomSquares, ///< a_ρ = Σ_{i≤ρ} u^{i²}
};

std::string to_string(SeriesRule r);
SeriesRule parse_series_rule(std::string_view id);

/// Deterministic rule ρ ↦ a_ρ producing a pseudo-convergent sequence in K.
///
/// Every generator also knows the exact distance of a_ρ to its limit z in the
/// completion: ν(z - a_ρ) = γ_ρ = ν(a_{ρ+1} - a_ρ). Elements are memoized
/// behind a mutex, so copies share the cache and concurrent reads are safe.
class PcsGenerator {
public:
    /// Successive lifts of a simple root of g starting from a0. Requires K = Q,
    /// g monic with p-integral coefficients, ν(g(a0)) >= 1 and ∂_1 g(a0) a unit.
    static PcsGenerator hensel(const ValuedField &F, const Poly &g, const FieldElem &a0);
    static PcsGenerator series(const ValuedField &F, SeriesRule rule);

    const ValuedField &field() const;
    bool is_hensel() const;
    /// Throws Unsupported for series generators.
    const Poly &hensel_poly() const;
    std::optional<SeriesRule> rule() const;

    FieldElem element(std::size_t rho) const;
    std::vector<FieldElem> prefix(std::size_t m) const;
    ExtValue gamma(std::size_t rho) const;

    /// A closed-form limit inside K, when the rule has one.
    std::optional<FieldElem> declared_limit() const;

    /// `hensel:<field>;g=<poly>;a0=<elem>` or `series:<field>;expr=<rule-id>`.
    std::string descriptor() const;

private:
    struct State;
    explicit PcsGenerator(std::shared_ptr<State> s) : st_(std::move(s)) {}
    std::shared_ptr<State> st_;
};

PcsGenerator parse_generator(std::string_view s);

} // namespace valkey
