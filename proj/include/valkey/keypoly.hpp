#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valkey/search.hpp"
#include "valkey/xval.hpp"

namespace valkey {

struct EpsilonRow {
    unsigned b;
    ExtValue nu_derivative;        ///< ν(∂_b f)
    std::optional<ExtValue> ratio; ///< (ν(f) - ν(∂_b f))/b; empty when ∂_b f has value INF
};

struct EpsilonReport {
    ExtValue nu;      ///< ν(f)
    ExtValue epsilon; ///< INF iff ν(f) = INF
    std::vector<unsigned> I;
    unsigned b = 0; ///< min I
    std::vector<EpsilonRow> table; ///< one row per b with ∂_b f != 0
};

/// ε(f) = max_b (ν(f) - ν(∂_b f))/b over 1 <= b <= deg f with ∂_b f != 0.
/// When ν(f) = INF, ε = INF and I holds the least b with ν(∂_b f) finite.
/// Throws InputError for constants.
EpsilonReport epsilon(const XValuation &V, const Poly &f);

/// ν_q(f) = min ν(f_i)+i·ν(q) over the q-expansion. q monic of degree >= 1.
ExtValue truncate(const XValuation &V, const Poly &q, const Poly &f);

struct SupportSet {
    ExtValue value;             ///< ν_q(f)
    std::vector<unsigned> S;    ///< indices i with ν(f_i q^i) = ν_q(f)
    unsigned delta = 0;         ///< max S
};

SupportSet support_set(const XValuation &V, const Poly &q, const Poly &f);

struct AlphaPsi {
    std::optional<int> alpha; ///< empty: ν_Q = ν on the searched region
    std::vector<Poly> psi;    ///< verified members of Ψ(Q), canonical order
    std::size_t examined = 0;
};

/// Least degree d in [deg Q, degree_bound] with a monic f, ν_Q(f) < ν(f), found by
/// searching the grid and structured candidates (valuation hints, hint + c, Q + c,
/// products of hints).
AlphaPsi alpha_psi(const XValuation &V, const Poly &Q, int degree_bound, const SearchConfig &cfg);

struct KeyStatus {
    enum class Verdict { Certified, Falsified, Unknown };
    enum class Reason { None, Linear, PsiMember, LimitWitness };

    Verdict verdict = Verdict::Unknown;
    Reason reason = Reason::None;
    ExtValue eps;                      ///< ε(Q)
    std::optional<Poly> q_minus;       ///< PsiMember / LimitWitness predecessor
    std::optional<Poly> witness;       ///< Falsified: deg < deg Q and ε(witness) >= ε(Q)
    std::optional<ExtValue> witness_eps;
    std::size_t examined = 0;
    std::string note;

    bool certified() const { return verdict == Verdict::Certified; }
};

std::string to_string(KeyStatus::Verdict v);
std::string to_string(KeyStatus::Reason r);

/// Three-valued key test: linear keys, then a falsification search over lower
/// degrees, then Ψ-membership over a certified predecessor, then (K1)-(K4).
KeyStatus is_key(const XValuation &V, const Poly &Q, const SearchConfig &cfg);

struct LimitCheck {
    explicit LimitCheck(Poly qm) : q_minus(std::move(qm)) {}

    Poly q_minus;
    bool k1 = false, k2 = false, k3 = false, k4 = false;
    bool overall = false;
    std::vector<Poly> family;             ///< sampled cofinal members of Ψ(Q_-)
    std::vector<ExtValue> family_values;  ///< their ν-values
    std::vector<Poly> psi_samples;
    std::optional<Poly> k4_counterexample;
    std::vector<std::string> notes;
};

/// Bounded check of (K1)-(K4) for Q over the predecessor Q_-. Without an explicit
/// Q_- the generator's x - a_0 is used, or the best linear key found on the grid.
/// K2 is bounded-scale evidence: strict increase along the family x - a_ρ.
LimitCheck classify_limit(const XValuation &V, const Poly &Q, const std::optional<Poly> &q_minus,
                          const SearchConfig &cfg);

struct CompleteSetReport {
    struct Witness {
        Poly f;
        std::size_t key_index;
        ExtValue truncated; ///< ν_Q(f)
        ExtValue value;     ///< ν(f)
    };
    std::vector<Poly> keys;
    std::vector<ExtValue> eps;
    std::vector<bool> limit_flags;
    std::vector<Witness> witnesses;
    std::vector<Poly> uncovered;
    bool complete = false;
};

/// Greedy ascent to a set Λ of keys such that every corpus member has a
/// witness Q in Λ with ν_Q(f) = ν(f).
CompleteSetReport build_complete_set(const XValuation &V, int degree_bound, const std::vector<Poly> &corpus,
                                     const SearchConfig &cfg);

/// validate_structure plus a key certificate for every augmentation key, checked
/// against the augmented valuation it defines.
std::vector<std::string> validate(const XValuation &V, const SearchConfig &cfg);

} // namespace valkey
