// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Expected values come from the reference computations in oracle.hpp or from
// hand expansion; the library is only ever the system under test.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "valkey/generator.hpp"
#include "valkey/keypoly.hpp"
#include "valkey/parse.hpp"
#include "valkey/pcs.hpp"
#include "valkey/search.hpp"
#include "valkey/suites.hpp"
#include "valkey/xval.hpp"

using namespace valkey;

namespace {

struct Outcome {
    bool pass = true;
    std::string failure; // first failed requirement
    std::ostringstream note;

    void require(bool ok, const std::string &what)
    {
        if (!ok && pass) {
            pass = false;
            failure = what;
        }
    }
};

std::optional<mpq_class> as_opt(const ExtValue &v)
{
    return v.is_inf() ? std::nullopt : std::optional<mpq_class>(v.rational());
}

const std::vector<KeyFixture> &fixtures()
{
    static const std::vector<KeyFixture> fx = key_fixtures(SuiteOptions{});
    return fx;
}

// Certified keys from the fixtures plus any valuation hints that certify.
struct KeySet {
    const XValuation *V;
    std::string descriptor;
    std::vector<std::pair<Poly, ExtValue>> keys;
};

const std::vector<KeySet> &all_keys()
{
    static const std::vector<KeySet> ks = [] {
        std::vector<KeySet> out;
        for (const auto &k : fixtures()) {
            KeySet s{&k.V, k.descriptor, {}};
            for (const auto &[Q, st] : k.keys)
                s.keys.emplace_back(Q, st.eps);
            for (const auto &Q : valuation_hints(k.V, 4)) {
                if (std::any_of(s.keys.begin(), s.keys.end(), [&](const auto &e) { return e.first == Q; }))
                    continue;
                if (const auto st = is_key(k.V, Q, k.cfg); st.certified())
                    s.keys.emplace_back(Q, st.eps);
            }
            out.push_back(std::move(s));
        }
        return out;
    }();
    return ks;
}

// ν_q(f) from an independent expansion, for Gauss and single augmentations over Q.
std::optional<mpq_class> truncation_oracle(const std::function<std::optional<mpq_class>(const oracle::Coeffs &)> &nu,
                                           const oracle::Coeffs &f, const oracle::Coeffs &q)
{
    std::optional<mpq_class> best;
    const auto vq = nu(q);
    oracle::Coeffs rest = f;
    oracle::trim(rest);
    for (long i = 0; !rest.empty(); ++i) {
        auto [quot, rem] = oracle::divide(rest, q);
        if (i > 0 && !vq)
            break; // ν(q) = ∞: every term past the first is infinite
        if (auto v = nu(rem)) {
            const mpq_class w = *v + *vq * i;
            if (!best || w < *best)
                best = w;
        }
        rest = quot;
    }
    return best;
}

Outcome truncation_counterexample()
{
    Outcome o;
    const XValuation V = parse_valuation("gauss:qp:3:1");
    const auto &F = V.field();
    const Poly q = parse_poly(F, "x^2+1");
    auto gauss = [](const oracle::Coeffs &c) { return oracle::gauss(c, 3, 1); };
    const auto f = oracle::coeffs(parse_poly(F, "x^2-9")), a = oracle::coeffs(parse_poly(F, "x-3")),
               b = oracle::coeffs(parse_poly(F, "x+3")), qc = oracle::coeffs(q);
    // hand expansion: x^2-9 = q - 10 gives min(0, 0) = 0; x±3 has value min(1, 1) = 1
    o.require(truncation_oracle(gauss, f, qc) == mpq_class(0), "oracle disagrees with the hand value 0");
    o.require(truncation_oracle(gauss, a, qc) == mpq_class(1) && truncation_oracle(gauss, b, qc) == mpq_class(1),
              "oracle disagrees with the hand value 1");
    const ExtValue prod = truncate(V, q, parse_poly(F, "x^2-9"));
    const ExtValue sum = truncate(V, q, parse_poly(F, "x-3")) + truncate(V, q, parse_poly(F, "x+3"));
    o.require(prod == ExtValue(0) && sum == ExtValue(2), "library values differ: " + prod.str() + ", " + sum.str());
    const auto r = run_suite("truncation-counterexample", SuiteOptions{});
    o.require(!r.passed && r.details.contains("witness") &&
                  r.details["witness"] == json::array({"x-3", "x+3"}),
              "suite did not fail with the witness (x-3, x+3)");
    o.note << "ν_q(x^2-9) = " << prod.str() << " < " << sum.str() << " = ν_q(x-3) + ν_q(x+3)";
    return o;
}

Outcome truncation_at_keys()
{
    Outcome o;
    std::mt19937_64 rng(101);
    std::size_t keys = 0, checked_by_oracle = 0;
    std::set<std::string> kinds, fields;
    for (const auto &k : fixtures()) {
        const auto &V = k.V;
        for (const auto &[Q, st] : k.keys) {
            ++keys;
            kinds.insert(k.descriptor.substr(0, k.descriptor.find(':')));
            fields.insert(V.field().str());
            // an independent ν for the single-level p-adic fixtures
            std::function<std::optional<mpq_class>(const oracle::Coeffs &)> nu;
            const unsigned p = V.field().prime();
            if (V.field().kind() == FieldKind::PAdic && V.kind() == XValuation::Kind::Gauss) {
                const mpq_class g = V.gamma().rational();
                nu = [=](const oracle::Coeffs &c) { return oracle::gauss(c, p, g); };
            } else if (V.field().kind() == FieldKind::PAdic && V.kind() == XValuation::Kind::Augmented &&
                       V.predecessor().kind() == XValuation::Kind::Gauss) {
                const mpq_class gx = V.predecessor().gamma().rational(), gq = V.gamma().rational();
                const auto kq = oracle::coeffs(V.key());
                nu = [=](const oracle::Coeffs &c) { return oracle::augmented(c, p, gx, kq, gq); };
            } else if (V.kind() == XValuation::Kind::Root) {
                nu = [](const oracle::Coeffs &c) { return oracle::root_value(c, {-2, 0, 1}, 3, 7); };
            }
            for (int s = 0; s < 200; ++s) {
                const Poly f = random_poly(k.cfg.grid, 3, rng), g = random_poly(k.cfg.grid, 3, rng);
                const ExtValue tf = truncate(V, Q, f), tg = truncate(V, Q, g);
                o.require(truncate(V, Q, f * g) == tf + tg,
                          k.descriptor + ", Q=" + Q.str() + ": not multiplicative at " + f.str() + ", " + g.str());
                o.require(truncate(V, Q, f + g) >= min(tf, tg), k.descriptor + ", Q=" + Q.str() + ": sum below min");
                if (nu && s < 40) {
                    ++checked_by_oracle;
                    o.require(as_opt(tf) == truncation_oracle(nu, oracle::coeffs(f), oracle::coeffs(Q)),
                              k.descriptor + ", Q=" + Q.str() + ": truncation differs from the oracle at " + f.str());
                }
            }
        }
    }
    o.require(keys >= 5, "only " + std::to_string(keys) + " certified keys");
    for (const char *kind : {"gauss", "aug", "root"})
        o.require(kinds.count(kind) == 1, std::string("no certified key on a ") + kind + " valuation");
    for (const char *f : {"qp:3", "qp:7", "fpt:3"})
        o.require(fields.count(f) == 1, std::string("no certified key over ") + f);
    o.note << keys << " keys x 200 pairs, " << checked_by_oracle << " truncations cross-checked";
    return o;
}

Outcome linear_keys()
{
    Outcome o;
    std::mt19937_64 rng(102);
    const XValuation G = parse_valuation("gauss:qp:3:1");
    const XValuation A = parse_valuation("aug:(gauss:qp:3:1);Q=x-3;g=2");
    const XValuation R = parse_valuation("root:qp:7;g=x^2-2;a0=3");
    const auto x_minus = [](const mpq_class &a) { return oracle::Coeffs{-a, 1}; };
    std::size_t n = 0;
    for (const XValuation *V : {&G, &A, &R}) {
        const auto cfg = default_config(V->field());
        const unsigned p = V->field().prime();
        for (int s = 0; s < 17; ++s, ++n) {
            const mpq_class a(static_cast<long>(rng() % 401) - 200, 1 + static_cast<long>(rng() % 9));
            const Poly f = Poly::linear(V->field(), FieldElem(a));
            std::optional<mpq_class> want;
            if (V == &G)
                want = oracle::gauss(x_minus(a), p, 1);
            else if (V == &A)
                want = oracle::augmented(x_minus(a), p, 1, x_minus(3), 2);
            else
                want = oracle::root_value(x_minus(a), {-2, 0, 1}, 3, 7);
            const auto e = epsilon(*V, f);
            o.require(as_opt(e.epsilon) == want && as_opt((*V)(f)) == want,
                      V->descriptor() + ": ε(" + f.str() + ") = " + e.epsilon.str());
            const auto st = is_key(*V, f, cfg);
            o.require(st.certified() && st.reason == KeyStatus::Reason::Linear,
                      V->descriptor() + ": " + f.str() + " not certified as linear");
        }
    }
    o.note << n << " sampled a, ε(x-a) = ν(x-a) and certified linear";
    return o;
}

Outcome powers_of_p()
{
    Outcome o;
    std::size_t n = 0;
    for (const auto &s : all_keys())
        for (const auto &[Q, eps] : s.keys) {
            ++n;
            const auto I = epsilon(*s.V, Q).I;
            const unsigned q = s.V->field().exponent_characteristic();
            bool ok = !I.empty();
            for (unsigned b : I) {
                unsigned r = b;
                while (q > 1 && r % q == 0)
                    r /= q;
                ok = ok && r == 1;
            }
            if (q == 1)
                ok = ok && I == std::vector<unsigned>{1};
            o.require(ok, s.descriptor + ", Q=" + Q.str() + ": I(Q) is not made of powers of p");
        }
    o.note << n << " certified keys, zero exceptions";
    return o;
}

Outcome irreducibility()
{
    Outcome o;
    std::size_t n = 0, proven = 0;
    for (const auto &s : all_keys())
        for (const auto &[Q, eps] : s.keys) {
            ++n;
            const auto r = irreducible_bounded(Q);
            o.require(r.verdict != Irreducibility::Verdict::Factor,
                      s.descriptor + ": key " + Q.str() + " has factor " + (r.factor ? r.factor->str() : ""));
            proven += r.verdict == Irreducibility::Verdict::Irreducible;
        }
    o.note << n << " keys, none reducible (" << proven << " proven irreducible)";
    return o;
}

Outcome epsilon_ordering()
{
    Outcome o;
    std::size_t pairs = 0;
    for (const auto &s : all_keys()) {
        const auto &V = *s.V;
        for (const auto &[Q, eQ] : s.keys)
            for (const auto &[R, eR] : s.keys) {
                if (Q == R)
                    continue;
                ++pairs;
                const std::string tag = s.descriptor + " (" + Q.str() + ", " + R.str() + ")";
                const bool trunc_lt = truncate(V, Q, R) < V(R);
                if (Q.degree() < R.degree())
                    o.require(eQ < eR, tag + ": deg < without ε <");
                if (eQ < eR)
                    o.require(trunc_lt, tag + ": ε < without ν_Q(Q') < ν(Q')");
                if (Q.degree() == R.degree())
                    o.require((V(Q) < V(R)) == trunc_lt && trunc_lt == (eQ < eR), tag + ": equivalence broken");
            }
    }
    o.require(pairs > 0, "no pairs of keys");
    o.note << pairs << " ordered pairs, zero exceptions";
    return o;
}

Outcome hensel_ladder()
{
    Outcome o;
    const auto gen = parse_generator("hensel:qp:7;g=x^2-2;a0=3");
    const auto pre = PcsPrefix::from_generator(gen, 5);
    std::vector<mpz_class> a;
    for (const auto &e : pre.elements) {
        o.require(e.rational().get_den() == 1, "non-integral element " + e.str());
        a.push_back(e.rational().get_num());
    }
    o.require(a[0] == 3 && a[1] == 10 && a[2] == 108, "prefix does not begin (3, 10, 108)");
    o.require(pre.gamma().size() >= 2 && pre.gamma()[0] == ExtValue(1) && pre.gamma()[1] == ExtValue(2),
              "γ does not begin (1, 2)");
    std::ostringstream vals;
    for (std::size_t r = 0; r < a.size(); ++r) {
        const mpz_class g = a[r] * a[r] - 2;
        const long v = oracle::vp(g, 7);
        o.require(v == static_cast<long>(r) + 1, "ν(g(a_" + std::to_string(r) + ")) = " + std::to_string(v));
        o.require(gen.field().val(FieldElem(mpq_class(g))) == ExtValue(v), "library ν disagrees with division");
        vals << (r ? ", " : "") << v;
    }
    o.note << "prefix (3, 10, 108, ...), ν(g(a_ρ)) = (" << vals.str() << ")";
    return o;
}

Outcome dominant_index_check()
{
    Outcome o;
    const auto H = parse_generator("hensel:qp:7;g=x^2-2;a0=3");
    const auto d1 = dominant_index(H, parse_poly(H.field(), "x^2-2"), 8);
    o.require(d1.h == 1 && d1.prediction_matches, "hensel: h = " + std::to_string(d1.h));
    // ν(a_ρ^2 - 2) = ρ + 1 = β_1 + γ_ρ with β_1 = ν(2·a_ρ) = 0
    for (std::size_t i = 0; i < d1.observed.size(); ++i) {
        const mpq_class a = H.element(d1.tail_start + i).rational();
        o.require(as_opt(d1.observed[i]) == oracle::vp(a * a - 2, 7), "observed value differs from division");
    }
    const auto S = parse_generator("series:fpt:3;expr=geom-squares");
    const auto d3 = dominant_index(S, parse_poly(S.field(), "x^3"), 8);
    o.require(d3.h == 3 && d3.prediction_matches && d3.power_of_exponent_characteristic,
              "fpt:3: h = " + std::to_string(d3.h));
    // Frobenius: a_{ρ+1}^3 - a_ρ^3 = (a_{ρ+1} - a_ρ)^3 has order 3·γ_ρ
    for (std::size_t r = 0; r < 7; ++r) {
        const FieldElem u = S.element(r + 1), v = S.element(r);
        o.require(ExtValue(*oracle::t_order(u * u * u - v * v * v)) == S.gamma(r).scaled(3),
                  "difference order is not 3·γ at " + std::to_string(r));
    }
    o.note << "hensel h = " << d1.h << ", fpt:3 x^3 h = " << d3.h;
    return o;
}

Outcome agreement_dichotomy()
{
    Outcome o;
    const XValuation V = parse_valuation("root:qp:7;g=x^2-2;a0=3");
    const auto &gen = *V.generator();
    auto corpus = monic_grid_corpus(make_grid(V.field()), 2, 100000);
    std::size_t fixed = 0;
    bool saw_g = false;
    for (const auto &f : corpus) {
        const auto r = verify_truncation_agreement(V, gen, f, 8);
        const auto want = oracle::root_value(oracle::coeffs(f), {-2, 0, 1}, 3, 7);
        o.require(as_opt(r.value) == want, f.str() + ": ν(f) differs from the oracle");
        if (r.fixed) {
            ++fixed;
            o.require(r.rho_f < r.truncations.size() && as_opt(r.truncations[r.rho_f]) == want,
                      f.str() + ": ν_ρ(f) != ν(f) at the stabilization index");
        } else {
            for (const auto &t : r.truncations)
                o.require(t < r.value, f.str() + ": unfixed but ν_ρ(f) = ν(f)");
        }
        if (f == gen.hensel_poly()) {
            saw_g = true;
            o.require(!r.fixed && r.value.is_inf() && r.truncations.size() >= 8, "x^2-2 should be unfixed with ν = inf");
        }
    }
    o.require(saw_g, "x^2-2 missing from the corpus");
    o.note << corpus.size() << " corpus polynomials, " << fixed << " fixed";
    return o;
}

Outcome sequence_keys()
{
    Outcome o;
    const auto H = parse_generator("hensel:qp:7;g=x^2-2;a0=3");
    const XValuation R = parse_valuation("root:qp:7;g=x^2-2;a0=3");
    const auto lc = classify_limit(R, parse_poly(R.field(), "x^2-2"), parse_poly(R.field(), "x-3"),
                                   default_config(R.field()));
    o.require(lc.k1 && lc.k2 && lc.k3 && lc.k4 && lc.overall, "x^2-2 fails (K1)-(K4)");
    const auto t = classify_type(H, 2, 8, make_grid(H.field()));
    o.require(t.algebraic && t.q_min && t.q_min->str() == "x^2-2", "hensel sequence not algebraic with x^2-2");

    const auto S = parse_generator("series:qp:5;expr=geom-squares");
    const auto r = verify_sequence_keys(S, 2, 6, make_grid(S.field()));
    o.require(!r.type.algebraic && r.type.degree_bound == 2, "geom-squares not transcendental up to degree 2");
    o.require(r.holds && r.unwitnessed.empty(), std::to_string(r.unwitnessed.size()) + " members unwitnessed");
    const XValuation L = XValuation::limit(S);
    for (const auto &w : r.witnesses) {
        const Poly q = Poly::linear(S.field(), S.element(w.rho));
        o.require(truncate(L, q, w.f) == L(w.f) && L(w.f) == w.value, w.f.str() + ": witness does not re-verify");
    }
    o.note << "K1-K4 hold for x^2-2; geom-squares TranscendentalUpTo(2), " << r.witnesses.size() << " witnesses";
    return o;
}

Outcome complete_sets()
{
    Outcome o;
    {
        const XValuation V = parse_valuation("gauss:qp:3:1");
        const auto corpus = monic_grid_corpus(make_grid(V.field()), 3, 100000);
        const auto r = build_complete_set(V, 3, corpus, default_config(V.field()));
        o.require(r.keys.size() == 1 && r.keys[0].str() == "x", "gauss: Λ != [x]");
        o.require(r.complete && r.witnesses.size() == corpus.size(), "gauss: corpus not covered");
        for (const auto &w : r.witnesses)
            o.require(as_opt(w.value) == oracle::gauss(oracle::coeffs(w.f), 3, 1) && w.truncated == w.value &&
                          truncate(V, r.keys[w.key_index], w.f) == w.value,
                      "gauss: witness for " + w.f.str() + " does not re-verify");
        o.note << "gauss Λ = [x] over " << corpus.size() << " polynomials; ";
    }
    {
        const XValuation V = parse_valuation("root:qp:7;g=x^2-2;a0=3");
        auto corpus = monic_grid_corpus(make_grid(V.field()), 1, 1000);
        for (const char *s : {"x^2-2", "x^2+x+1", "x^2-10", "x^2-3*x+7"})
            corpus.push_back(parse_poly(V.field(), s));
        const auto r = build_complete_set(V, 2, corpus, default_config(V.field()));
        o.require(!r.keys.empty() && r.keys.back().str() == "x^2-2" && r.limit_flags.back(),
                  "root: final key is not x^2-2 flagged as limit");
        o.require(r.complete, "root: " + std::to_string(r.uncovered.size()) + " members uncovered");
        for (const auto &w : r.witnesses) {
            const auto want = oracle::root_value(oracle::coeffs(w.f), {-2, 0, 1}, 3, 7);
            o.require(as_opt(w.value) == want && truncate(V, r.keys[w.key_index], w.f) == w.value,
                      "root: witness for " + w.f.str() + " does not re-verify");
        }
        o.note << "root Λ has " << r.keys.size() << " keys ending in " << r.keys.back().str() << " (limit)";
    }
    return o;
}

Outcome dificil()
{
    Outcome o;
    std::mt19937_64 rng(112);
    std::size_t samples = 0, equality = 0, implication = 0;
    for (const auto &k : fixtures())
        for (const auto &[Q, st] : k.keys) {
            const auto &V = k.V;
            const ExtValue eps = epsilon(V, Q).epsilon;
            for (int s = 0; s < 60; ++s, ++samples) {
                Poly f = random_poly(k.cfg.grid, Q.degree() + 1, rng);
                if (s % 2)
                    f = Q * random_poly(k.cfg.grid, 1, rng, true) + random_poly(k.cfg.grid, Q.degree() - 1, rng);
                if (f.degree() < 1)
                    continue;
                const ExtValue tf = truncate(V, Q, f);
                bool attained = false;
                for (int b = 1; b <= f.degree(); ++b) {
                    const Poly d = hasse_derivative(f, b);
                    if (d.is_zero())
                        continue;
                    const ExtValue td = truncate(V, Q, d);
                    const auto r = ratio(tf, td, b);
                    if (!r)
                        continue;
                    o.require(*r <= eps, k.descriptor + ", Q=" + Q.str() + ": (i) fails at " + f.str());
                    if (*r != eps)
                        continue;
                    attained = true;
                    if (td == V(d)) {
                        ++implication;
                        const ExtValue ef = epsilon(V, f).epsilon;
                        o.require(ef >= eps, k.descriptor + ", Q=" + Q.str() + ": (iii) ε(f) < ε at " + f.str());
                        if (V(f) > tf)
                            o.require(ef > eps, k.descriptor + ", Q=" + Q.str() + ": (iii) strictness at " + f.str());
                    }
                }
                if (support_set(V, Q, f).S != std::vector<unsigned>{0}) {
                    ++equality;
                    o.require(attained, k.descriptor + ", Q=" + Q.str() + ": (ii) no b attains ε at " + f.str());
                }
            }
        }
    o.require(equality > 0 && implication > 0, "hypotheses of (ii) or (iii) never triggered");
    o.note << samples << " samples, (ii) triggered " << equality << "x, (iii) triggered " << implication << "x";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"truncation counterexample", truncation_counterexample},
        {"truncation at keys is a valuation", truncation_at_keys},
        {"linear keys", linear_keys},
        {"critical indices are powers of p", powers_of_p},
        {"keys are irreducible", irreducibility},
        {"epsilon ordering of keys", epsilon_ordering},
        {"hensel ladder", hensel_ladder},
        {"dominant index", dominant_index_check},
        {"truncation dichotomy along the sequence", agreement_dichotomy},
        {"sequence keys, both branches", sequence_keys},
        {"complete sets", complete_sets},
        {"truncated epsilon bound", dificil},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.failure = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << (o.pass ? o.note.str() : o.failure)
                  << " (" << static_cast<long>(ms) << " ms)\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
