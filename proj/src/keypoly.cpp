#include "valkey/keypoly.hpp"

#include <algorithm>

#include "valkey/errors.hpp"

namespace valkey {

EpsilonReport epsilon(const XValuation &V, const Poly &f)
{
    if (f.degree() < 1)
        throw InputError("epsilon is undefined for constants");
    EpsilonReport r;
    r.nu = V(f);
    std::optional<ExtValue> best;
    for (int b = 1; b <= f.degree(); ++b) {
        const Poly d = hasse_derivative(f, b);
        if (d.is_zero())
            continue;
        EpsilonRow row{static_cast<unsigned>(b), V(d), std::nullopt};
        row.ratio = ratio(r.nu, row.nu_derivative, b);
        if (row.ratio) {
            if (!best || *best < *row.ratio) {
                best = row.ratio;
                r.I.clear();
            }
            if (*row.ratio == *best)
                r.I.push_back(b);
        }
        r.table.push_back(std::move(row));
    }
    if (!best)
        throw MathError("no admissible b for epsilon of " + f.str());
    if (r.nu.is_inf()) {
        // every finite-denominator ratio is INF; keep the least attaining b
        r.I.resize(1);
    }
    r.epsilon = *best;
    r.b = r.I.front();
    return r;
}

namespace {

std::vector<ExtValue> term_values(const XValuation &V, const Poly &q, const Poly &f)
{
    if (q.degree() < 1 || !q.is_monic())
        throw InputError("truncation needs a monic polynomial of degree >= 1, got " + q.str());
    const auto parts = q_expansion(f, q);
    const ExtValue vq = V(q);
    std::vector<ExtValue> out;
    out.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        out.push_back(parts[i].is_zero() ? ExtValue::inf() : V(parts[i]) + vq.scaled(static_cast<long>(i)));
    return out;
}

} // namespace

ExtValue truncate(const XValuation &V, const Poly &q, const Poly &f)
{
    ExtValue best = ExtValue::inf();
    for (const auto &v : term_values(V, q, f))
        best = min(best, v);
    return best;
}

SupportSet support_set(const XValuation &V, const Poly &q, const Poly &f)
{
    const auto terms = term_values(V, q, f);
    SupportSet s;
    s.value = ExtValue::inf();
    for (const auto &v : terms)
        s.value = min(s.value, v);
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i] == s.value)
            s.S.push_back(static_cast<unsigned>(i));
    s.delta = s.S.back();
    return s;
}

namespace {

std::vector<FieldElem> grid_constants(const Grid &g)
{
    std::vector<FieldElem> out;
    for (const auto &c : g.coeffs)
        if (!c.is_zero())
            out.push_back(c);
    return out;
}

// Monic candidates of exact degree d from the grid and structured sources.
std::vector<Poly> structured_candidates(const XValuation &V, const Poly &Q, int d, const SearchConfig &cfg)
{
    const ValuedField &F = V.field();
    std::vector<Poly> out = monic_grid_polys(cfg.grid, d, cfg.budget);
    const auto hints = valuation_hints(V, cfg.window);
    const auto consts = grid_constants(cfg.grid);
    auto add_shifts = [&](const Poly &h) {
        out.push_back(h);
        for (const auto &c : consts)
            out.push_back(h + Poly::constant(F, c));
    };
    for (const auto &h : hints)
        if (h.degree() == d)
            add_shifts(h);
    if (Q.degree() == d)
        add_shifts(Q);
    // the family x - a_ρ is cofinal: follow it past ν(Q)
    if (const auto &gen = V.generator(); gen && d == 1) {
        const ExtValue vQ = V(Q);
        for (unsigned r = 0; r <= V.precision_cap(); ++r) {
            out.push_back(Poly::linear(F, gen->element(r)));
            if (vQ < gen->gamma(r))
                break;
        }
    }
    for (std::size_t i = 0; i < hints.size(); ++i)
        for (std::size_t j = i; j < hints.size(); ++j)
            if (hints[i].degree() + hints[j].degree() == d)
                out.push_back(hints[i] * hints[j]);
    canonicalize(out);
    return out;
}

} // namespace

AlphaPsi alpha_psi(const XValuation &V, const Poly &Q, int degree_bound, const SearchConfig &cfg)
{
    AlphaPsi r;
    for (int d = std::max(1, Q.degree()); d <= degree_bound; ++d) {
        for (const auto &f : structured_candidates(V, Q, d, cfg)) {
            ++r.examined;
            if (truncate(V, Q, f) < V(f))
                r.psi.push_back(f);
        }
        if (!r.psi.empty()) {
            r.alpha = d;
            return r;
        }
    }
    return r;
}

std::string to_string(KeyStatus::Verdict v)
{
    switch (v) {
    case KeyStatus::Verdict::Certified:
        return "certified";
    case KeyStatus::Verdict::Falsified:
        return "falsified";
    case KeyStatus::Verdict::Unknown:
        return "unknown";
    }
    return {};
}

std::string to_string(KeyStatus::Reason r)
{
    switch (r) {
    case KeyStatus::Reason::None:
        return "none";
    case KeyStatus::Reason::Linear:
        return "linear";
    case KeyStatus::Reason::PsiMember:
        return "psi-member";
    case KeyStatus::Reason::LimitWitness:
        return "limit-witness";
    }
    return {};
}

namespace {

// Lower-degree monic candidates for falsifying Q.
std::vector<Poly> falsification_candidates(const XValuation &V, const Poly &Q, const SearchConfig &cfg)
{
    std::vector<Poly> out;
    for (int d = 1; d < Q.degree(); ++d) {
        auto part = monic_grid_polys(cfg.grid, d, cfg.budget);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::vector<Poly> small;
    for (const auto &h : valuation_hints(V, cfg.window))
        if (h.degree() >= 1 && h.degree() < Q.degree())
            small.push_back(h);
    for (int b = 1; b < Q.degree(); ++b) {
        const Poly d = hasse_derivative(Q, b);
        if (d.degree() >= 1)
            small.push_back(d.monic());
    }
    out.insert(out.end(), small.begin(), small.end());
    for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = i; j < small.size(); ++j)
            if (small[i].degree() + small[j].degree() < Q.degree())
                out.push_back(small[i] * small[j]);
    canonicalize(out);
    return out;
}

KeyStatus is_key_depth(const XValuation &V, const Poly &Q, const SearchConfig &cfg, int depth)
{
    if (Q.degree() < 1 || !Q.is_monic())
        throw InputError("key candidates must be monic of degree >= 1, got " + Q.str());
    KeyStatus st;
    st.eps = epsilon(V, Q).epsilon;
    if (Q.degree() == 1) {
        st.verdict = KeyStatus::Verdict::Certified;
        st.reason = KeyStatus::Reason::Linear;
        return st;
    }
    for (const auto &f : falsification_candidates(V, Q, cfg)) {
        ++st.examined;
        const ExtValue e = epsilon(V, f).epsilon;
        if (e >= st.eps) {
            st.verdict = KeyStatus::Verdict::Falsified;
            st.witness = f;
            st.witness_eps = e;
            return st;
        }
    }
    // Ψ-membership over a certified predecessor of lower degree
    if (depth > 0) {
        std::vector<Poly> preds;
        for (const auto &h : valuation_hints(V, cfg.window))
            if (h.degree() >= 1 && h.degree() < Q.degree())
                preds.push_back(h);
        for (const auto &c : cfg.grid.coeffs)
            preds.push_back(Poly::linear(V.field(), c));
        canonicalize(preds);
        std::vector<std::pair<ExtValue, Poly>> ranked;
        for (const auto &P : preds)
            ranked.emplace_back(V(P), P);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto &a, const auto &b) { return b.first < a.first; });
        const ExtValue vQ = V(Q);
        std::size_t tried = 0;
        for (const auto &[vP, P] : ranked) {
            if (tried >= 6)
                break;
            if (!(truncate(V, P, Q) < vQ))
                continue;
            ++tried;
            if (!is_key_depth(V, P, cfg, depth - 1).certified())
                continue;
            const auto ap = alpha_psi(V, P, Q.degree(), cfg);
            st.examined += ap.examined;
            if (ap.alpha && *ap.alpha == Q.degree()) {
                st.verdict = KeyStatus::Verdict::Certified;
                st.reason = KeyStatus::Reason::PsiMember;
                st.q_minus = P;
                st.note = "alpha(Q_-) = deg Q on the searched grid";
                return st;
            }
        }
    }
    if (V.generator()) {
        const auto lc = classify_limit(V, Q, std::nullopt, cfg);
        if (lc.overall) {
            st.verdict = KeyStatus::Verdict::Certified;
            st.reason = KeyStatus::Reason::LimitWitness;
            st.q_minus = lc.q_minus;
            st.note = "K2 is bounded-scale evidence";
            return st;
        }
    }
    st.note = "no falsifying witness and no certificate within budget";
    return st;
}

} // namespace

KeyStatus is_key(const XValuation &V, const Poly &Q, const SearchConfig &cfg)
{
    return is_key_depth(V, Q, cfg, 3);
}

LimitCheck classify_limit(const XValuation &V, const Poly &Q, const std::optional<Poly> &q_minus,
                          const SearchConfig &cfg)
{
    const ValuedField &F = V.field();
    const auto &gen = V.generator();
    const unsigned W = std::max(3u, cfg.window);

    // predecessor and the start of the cofinal family x - a_ρ, ρ > rho0
    long rho0 = -1;
    std::optional<Poly> Qm = q_minus;
    if (!Qm && gen) {
        Qm = Poly::linear(F, gen->element(0));
        rho0 = 0;
    }
    if (!Qm) {
        std::optional<std::pair<ExtValue, Poly>> best;
        for (const auto &c : cfg.grid.coeffs) {
            Poly P = Poly::linear(F, c);
            ExtValue v = V(P);
            if (!best || best->first < v)
                best.emplace(v, P);
        }
        Qm = best->second;
    }
    if (gen && rho0 < 0)
        for (unsigned r = 0; r < 2 * W; ++r)
            if (Poly::linear(F, gen->element(r)) == *Qm)
                rho0 = r;
    LimitCheck lc(*Qm);

    const auto ap = alpha_psi(V, *Qm, Qm->degree(), cfg);
    lc.psi_samples = ap.psi;
    lc.k1 = ap.alpha && *ap.alpha == Qm->degree();
    if (!lc.k1)
        lc.notes.push_back("K1: no member of Psi(Q_-) of degree deg Q_-");

    if (gen) {
        for (long r = rho0 + 1; lc.family.size() < W; ++r) {
            Poly P = Poly::linear(F, gen->element(r));
            const ExtValue v = V(P);
            if (truncate(V, *Qm, P) < v && P.degree() == Qm->degree()) {
                lc.family.push_back(P);
                lc.family_values.push_back(v);
            } else if (r > rho0 + static_cast<long>(2 * W)) {
                break;
            }
        }
        bool increasing = lc.family.size() == W;
        for (std::size_t i = 1; i < lc.family_values.size(); ++i)
            increasing = increasing && lc.family_values[i - 1] < lc.family_values[i];
        bool exceeded = !lc.family_values.empty();
        for (const auto &P : lc.psi_samples)
            exceeded = exceeded && V(P) < lc.family_values.back();
        lc.k2 = increasing && exceeded;
        lc.notes.push_back(lc.k2 ? "K2: bounded-scale evidence, strictly increasing over " + std::to_string(W) +
                                       " family members"
                                 : "K2: sampled values of Psi(Q_-) attain a maximum");
    } else {
        lc.notes.push_back("K2: no cofinal family (valuation has no generator)");
    }

    std::vector<Poly> primes = lc.family;
    primes.insert(primes.end(), lc.psi_samples.begin(), lc.psi_samples.end());
    const ExtValue vQ = V(Q);
    lc.k3 = !primes.empty();
    for (const auto &P : primes)
        if (!(truncate(V, P, Q) < vQ)) {
            lc.k3 = false;
            lc.notes.push_back("K3 fails at Q' = " + P.str());
            break;
        }

    // K4: every lower-degree candidate must fail K3 for some Q' in Ψ(Q_-)
    std::vector<Poly> witnesses = primes;
    if (gen)
        for (long r = rho0 + 1; r <= rho0 + static_cast<long>(2 * W); ++r)
            witnesses.push_back(Poly::linear(F, gen->element(r)));
    canonicalize(witnesses);
    std::vector<Poly> lower;
    for (int d = 1; d < Q.degree(); ++d) {
        auto part = monic_grid_polys(cfg.grid, d, cfg.budget);
        lower.insert(lower.end(), part.begin(), part.end());
    }
    for (const auto &h : valuation_hints(V, cfg.window))
        if (h.degree() >= 1 && h.degree() < Q.degree())
            lower.push_back(h);
    for (const auto &P : lc.family)
        if (P.degree() < Q.degree())
            lower.push_back(P);
    canonicalize(lower);
    lc.k4 = true;
    for (const auto &f : lower) {
        const ExtValue vf = V(f);
        bool witnessed = false;
        for (const auto &P : witnesses)
            if (truncate(V, P, f) == vf) {
                witnessed = true;
                break;
            }
        if (!witnessed) {
            lc.k4 = false;
            lc.k4_counterexample = f;
            lc.notes.push_back("K4 fails: " + f.str() + " satisfies K3 on all sampled Q'");
            break;
        }
    }
    lc.overall = lc.k1 && lc.k2 && lc.k3 && lc.k4;
    return lc;
}

namespace {

std::optional<std::size_t> find_witness(const XValuation &V, const std::vector<Poly> &keys, const Poly &f,
                                        ExtValue &tr, ExtValue &val)
{
    val = V(f);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        tr = truncate(V, keys[i], f);
        if (tr == val)
            return i;
    }
    return std::nullopt;
}

} // namespace

CompleteSetReport build_complete_set(const XValuation &V, int degree_bound, const std::vector<Poly> &corpus,
                                     const SearchConfig &cfg)
{
    for (const auto &f : corpus)
        if (f.degree() > degree_bound)
            throw InputError("corpus member " + f.str() + " exceeds the degree bound");
    const ValuedField &F = V.field();
    CompleteSetReport rep;
    auto push_key = [&](const Poly &Q, bool limit) {
        rep.keys.push_back(Q);
        rep.eps.push_back(epsilon(V, Q).epsilon);
        rep.limit_flags.push_back(limit);
    };
    auto uncovered = [&]() {
        std::vector<Poly> out;
        ExtValue tr, val;
        for (const auto &f : corpus)
            if (!find_witness(V, rep.keys, f, tr, val))
                out.push_back(f);
        return out;
    };

    if (const auto &gen = V.generator()) {
        const unsigned W = std::max(3u, cfg.window);
        unsigned depth = W;
        for (unsigned r = 0; r < W; ++r)
            push_key(Poly::linear(F, gen->element(r)), false);
        std::optional<Poly> limit_candidate;
        if (V.kind() == XValuation::Kind::Root)
            limit_candidate = V.key();
        else if (auto L = gen->declared_limit())
            limit_candidate = Poly::linear(F, *L);
        auto open = uncovered();
        // widen the family lazily for members the limit candidate does not witness
        auto needs_family = [&]() {
            for (const auto &f : open)
                if (!limit_candidate || !(truncate(V, *limit_candidate, f) == V(f)))
                    return true;
            return false;
        };
        while (needs_family() && depth < 2 * W) {
            push_key(Poly::linear(F, gen->element(depth++)), false);
            open = uncovered();
        }
        if (!open.empty() && limit_candidate) {
            const auto lc = classify_limit(V, *limit_candidate, std::nullopt, cfg);
            const auto st = is_key(V, *limit_candidate, cfg);
            if (st.verdict != KeyStatus::Verdict::Falsified)
                push_key(*limit_candidate, lc.overall);
            open = uncovered();
        }
        rep.uncovered = open;
    } else {
        push_key(Poly::x(F), false);
        auto open = uncovered();
        for (int guard = 0; !open.empty() && guard < degree_bound + 8; ++guard) {
            const Poly &last = rep.keys.back();
            auto ap = alpha_psi(V, last, degree_bound, cfg);
            if (!ap.alpha)
                break;
            std::optional<std::pair<ExtValue, Poly>> best;
            for (const auto &P : ap.psi) {
                if (std::find(rep.keys.begin(), rep.keys.end(), P) != rep.keys.end())
                    continue;
                const ExtValue v = V(P);
                if (!best || best->first < v)
                    best.emplace(v, P);
            }
            if (!best)
                break;
            const auto st = is_key(V, best->second, cfg);
            if (st.verdict == KeyStatus::Verdict::Falsified)
                break;
            push_key(best->second, false);
            open = uncovered();
        }
        rep.uncovered = open;
    }
    for (const auto &f : corpus) {
        ExtValue tr, val;
        if (auto i = find_witness(V, rep.keys, f, tr, val))
            rep.witnesses.push_back({f, *i, tr, val});
    }
    rep.complete = rep.uncovered.empty();
    return rep;
}

std::vector<std::string> validate(const XValuation &V, const SearchConfig &cfg)
{
    auto out = validate_structure(V);
    if (V.kind() == XValuation::Kind::Augmented) {
        const auto inner = validate(V.predecessor(), cfg);
        for (const auto &m : inner)
            if (std::find(out.begin(), out.end(), m) == out.end())
                out.push_back(m);
        const auto st = is_key(V, V.key(), cfg);
        if (!st.certified())
            out.push_back("missing key certificate for " + V.key().str() + " (" + to_string(st.verdict) + ")");
    }
    return out;
}

} // namespace valkey
