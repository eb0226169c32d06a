#pragma once

#include <array>
#include <optional>
#include <vector>

#include "valkey/generator.hpp"
#include "valkey/keypoly.hpp"

namespace valkey {

/// Finite prefix a_0..a_m of a pseudo-convergent sequence.
struct PcsPrefix {
    ValuedField field;
    std::vector<FieldElem> elements;

    static PcsPrefix from_generator(const PcsGenerator &gen, std::size_t m);
    /// γ_ρ = ν(a_{ρ+1} - a_ρ) for ρ < m.
    std::vector<ExtValue> gamma() const;
};

struct PcsCheck {
    bool ok = true;
    std::optional<std::array<std::size_t, 3>> violation; ///< (ρ, σ, τ)
    std::vector<ExtValue> gamma;
};

/// Exhaustive check of ν(a_σ - a_ρ) < ν(a_τ - a_σ) over all ρ < σ < τ.
PcsCheck check_pcs(const PcsPrefix &prefix);

PcsGenerator hensel_generator(const ValuedField &F, const Poly &g, const FieldElem &a0);

struct FixedValueReport {
    enum class Status { Fixed, Increasing };
    Status status = Status::Fixed;
    ExtValue value;          ///< Fixed: the stable value
    std::size_t rho_f = 0;   ///< Fixed: first index of the stable run
    std::vector<ExtValue> values; ///< ν(f(a_ρ)) over the window actually used
    unsigned window = 0;
};

/// Fixed when two consecutive values agree strictly below γ_ρ, the Taylor data at
/// some index of the run certifies ν(f(z)), and the value stays put to the end
/// of the window. Increasing when strictly increasing after leading INF values.
/// The window is doubled once before giving up; throws Indeterminate then.
FixedValueReport fixed_value(const PcsGenerator &gen, const Poly &f, unsigned window);

struct DominantIndex {
    unsigned h = 0;
    std::vector<std::pair<unsigned, ExtValue>> beta; ///< (i, β_i) for ∂_i f != 0
    std::size_t tail_start = 0;
    unsigned window = 0;
    bool f_fixed = false;
    /// ν(f(a_{ρ+1}) - f(a_ρ)) = β_h + h·γ_ρ on the tail.
    bool difference_identity = false;
    /// Unfixed f: ν(f(a_ρ)) = β_h + h·γ_ρ on the tail. Fixed f: at most that, once settled.
    bool prediction_matches = false;
    bool power_of_exponent_characteristic = false;
    std::vector<ExtValue> predicted, observed;
};

/// The index h attaining the strict eventual minimum of β_i + i·γ_ρ.
/// Throws MathError for constants and HypothesisViolated when some ∂_i f is not fixed.
DominantIndex dominant_index(const PcsGenerator &gen, const Poly &f, unsigned window);

struct TypeReport {
    bool algebraic = false;
    int degree_bound = 0;
    std::optional<Poly> q_min;
    std::size_t examined = 0;
};

/// Algebraic(q_min) or TranscendentalUpTo(degree_bound) from a fixed-value sweep.
TypeReport classify_type(const PcsGenerator &gen, int degree_bound, unsigned window, const Grid &grid);

struct AgreementReport {
    bool fixed = false;
    std::size_t rho_f = 0;
    ExtValue value; ///< ν(f)
    std::vector<ExtValue> truncations; ///< ν_{x-a_ρ}(f)
    std::vector<ExtValue> evaluations; ///< ν(f(a_ρ))
    bool identity_holds = false;       ///< ν_ρ(f) = ν(f(a_ρ)) where checked
    bool dichotomy_holds = false;
};

/// Compares the truncations ν_{x-a_ρ}(f) with ν(f): equality from the stabilization
/// index on for fixed f, strict inequality at every index otherwise.
AgreementReport verify_truncation_agreement(const XValuation &V, const PcsGenerator &gen, const Poly &f,
                                            unsigned window);

struct SequenceKeysReport {
    TypeReport type;
    std::optional<LimitCheck> limit; ///< algebraic branch
    struct Witness {
        Poly f;
        std::size_t rho;
        ExtValue value;
    };
    std::vector<Witness> witnesses; ///< transcendental branch
    std::vector<Poly> unwitnessed;
    bool holds = false;
};

/// Throws HypothesisViolated("LimitInK") when a grid element or the declared
/// limit is a pseudo-limit over the window.
void check_no_limit_in_field(const PcsGenerator &gen, unsigned window, const Grid &grid);

/// Transcendental type: every corpus polynomial is witnessed by some x - a_ρ.
/// Algebraic type: q_min passes (K1)-(K4) over Q_- = x - a_0.
SequenceKeysReport verify_sequence_keys(const PcsGenerator &gen, int degree_bound, unsigned window,
                                        const Grid &grid);

} // namespace valkey
