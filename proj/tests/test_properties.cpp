#include <doctest.h>

#include <random>

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

constexpr std::uint64_t kSeed = 20240611;

FieldElem rand_elem(const ValuedField &F, std::mt19937_64 &rng)
{
    if (F.kind() == FieldKind::PAdic) {
        const long n = static_cast<long>(rng() % 2001) - 1000;
        const long d = 1 + static_cast<long>(rng() % 500);
        return FieldElem(mpq_class(n, d));
    }
    auto fp = [&](bool nonzero) {
        std::vector<std::uint32_t> c(1 + rng() % 4);
        for (auto &x : c)
            x = static_cast<std::uint32_t>(rng() % F.prime());
        if (nonzero && std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; }))
            c.back() = 1;
        return FpPoly(F.prime(), c);
    };
    return FieldElem(RatFunc(fp(false), fp(true)));
}

Poly rand_poly(const ValuedField &F, int max_deg, std::mt19937_64 &rng)
{
    std::vector<FieldElem> c(1 + rng() % (max_deg + 1));
    for (auto &x : c)
        x = rng() % 3 ? rand_elem(F, rng) : F.zero();
    return Poly(F, c);
}

const std::vector<ValuedField> &fields()
{
    static const std::vector<ValuedField> fs{ValuedField::padic(3), ValuedField::padic(7), ValuedField::tseries(2),
                                             ValuedField::tseries(3)};
    return fs;
}

const std::vector<KeyFixture> &fixtures()
{
    static const std::vector<KeyFixture> fx = key_fixtures(SuiteOptions{});
    return fx;
}

} // namespace

TEST_CASE("base valuation axioms")
{
    std::mt19937_64 rng(kSeed);
    for (const auto &F : fields()) {
        CHECK(F.exponent_characteristic() == (F.kind() == FieldKind::PAdic ? 1u : F.prime()));
        for (int s = 0; s < 200; ++s) {
            const FieldElem a = rand_elem(F, rng), b = rand_elem(F, rng);
            const ExtValue va = F.val(a), vb = F.val(b);
            CHECK(va.is_inf() == a.is_zero());
            if (!a.is_zero() && !b.is_zero())
                CHECK(F.val(a * b) == va + vb);
            CHECK(F.val(a + b) >= min(va, vb));
            if (va != vb)
                CHECK(F.val(a + b) == min(va, vb));
        }
    }
}

TEST_CASE("hasse composition and leibniz")
{
    std::mt19937_64 rng(kSeed + 1);
    for (const auto &F : fields()) {
        for (int s = 0; s < 100; ++s) {
            const Poly f = rand_poly(F, 6, rng);
            const unsigned a = rng() % 4, b = rng() % 4;
            const FieldElem c = F.from_int(oracle::binomial(a + b, a));
            CHECK(hasse_derivative(hasse_derivative(f, b), a) == c * hasse_derivative(f, a + b));
        }
        for (int s = 0; s < 50; ++s) {
            const Poly f = rand_poly(F, 4, rng), g = rand_poly(F, 4, rng);
            const unsigned b = rng() % 6;
            Poly sum(F);
            for (unsigned j = 0; j <= b; ++j)
                sum += hasse_derivative(f, j) * hasse_derivative(g, b - j);
            CHECK(hasse_derivative(f * g, b) == sum);
        }
    }
}

TEST_CASE("expansions reconstruct")
{
    std::mt19937_64 rng(kSeed + 2);
    for (const auto &F : fields())
        for (int s = 0; s < 50; ++s) {
            const Poly f = rand_poly(F, 7, rng);
            Poly q = rand_poly(F, 3, rng);
            if (q.degree() < 1)
                continue;
            q = q.monic();
            CHECK(recompose(q_expansion(f, q), q) == f);
            const FieldElem a = rand_elem(F, rng);
            const auto T = taylor_expansion(f, a);
            const auto E = q_expansion(f, Poly::linear(F, a));
            for (std::size_t i = 0; i < std::max(T.size(), E.size()); ++i) {
                const FieldElem t = i < T.size() ? T[i] : F.zero();
                const FieldElem e = i < E.size() && !E[i].is_zero() ? E[i].coeff(0) : F.zero();
                CHECK(t == e);
            }
        }
}

TEST_CASE("every constructed instance is a valuation")
{
    std::mt19937_64 rng(kSeed + 3);
    for (const auto &k : fixtures()) {
        const auto &V = k.V;
        const Poly g = V.kind() == XValuation::Kind::Root ? V.generator()->hensel_poly() : Poly(V.field());
        for (int s = 0; s < 200; ++s) {
            const Poly f = random_poly(k.cfg.grid, 3, rng), h = random_poly(k.cfg.grid, 3, rng);
            const ExtValue vf = V(f), vh = V(h);
            CHECK_MESSAGE(V(f * h) == vf + vh, k.descriptor, ": ", f.str(), ", ", h.str());
            CHECK(V(f + h) >= min(vf, vh));
            if (!g.is_zero() && !divides(g, f) && !divides(g, h))
                CHECK(V(f * h).is_finite());
        }
        for (const auto &c : k.cfg.grid.coeffs)
            CHECK(V(Poly::constant(V.field(), c)) == V.field().val(c));
        if (V.kind() == XValuation::Kind::Gauss)
            for (int s = 0; s < 50; ++s) {
                const Poly f = random_poly(k.cfg.grid, 4, rng);
                CHECK(V(f) == truncate(V, Poly::x(V.field()), f));
            }
    }
}

TEST_CASE("key invariants on every certified key")
{
    std::mt19937_64 rng(kSeed + 4);
    std::size_t keys = 0;
    for (const auto &k : fixtures()) {
        const auto &V = k.V;
        for (const auto &[Q, st] : k.keys) {
            ++keys;
            const auto e = epsilon(V, Q);
            const unsigned q = V.field().exponent_characteristic();
            for (unsigned b : e.I) {
                unsigned r = b;
                while (q > 1 && r % q == 0)
                    r /= q;
                CHECK_MESSAGE(r == 1, k.descriptor, " ", Q.str(), " has b = ", b);
            }
            CHECK(irreducible_bounded(Q).verdict != Irreducibility::Verdict::Factor);
            for (int s = 0; s < 100; ++s) {
                // smaller-degree bound
                const Poly f = random_poly(k.cfg.grid, Q.degree() - 1, rng);
                if (f.degree() >= 1 && st.eps.is_finite())
                    for (int b = 1; b <= f.degree(); ++b)
                        CHECK(V(hasse_derivative(f, b)) > V(f) - st.eps.scaled(b));
                // truncation at a key is a valuation
                const Poly u = random_poly(k.cfg.grid, 3, rng), w = random_poly(k.cfg.grid, 3, rng);
                CHECK(truncate(V, Q, u * w) == truncate(V, Q, u) + truncate(V, Q, w));
                CHECK(truncate(V, Q, u + w) >= min(truncate(V, Q, u), truncate(V, Q, w)));
            }
        }
        for (const auto &[Q, sQ] : k.keys)
            for (const auto &[R, sR] : k.keys) {
                if (Q == R)
                    continue;
                if (Q.degree() < R.degree())
                    CHECK(sQ.eps < sR.eps);
                if (sQ.eps < sR.eps)
                    CHECK(truncate(V, Q, R) < V(R));
            }
    }
    CHECK(keys >= 5);
}

TEST_CASE("falsified witnesses re-verify")
{
    std::mt19937_64 rng(kSeed + 5);
    const XValuation V = parse_valuation("gauss:qp:3:1");
    const auto cfg = default_config(V.field());
    for (int s = 0; s < 15; ++s) {
        const Poly Q = random_poly(cfg.grid, 3, rng, true);
        if (Q.degree() < 2)
            continue;
        const auto st = is_key(V, Q, cfg);
        if (st.verdict == KeyStatus::Verdict::Falsified) {
            REQUIRE(st.witness);
            CHECK(st.witness->degree() < Q.degree());
            CHECK(epsilon(V, *st.witness).epsilon >= epsilon(V, Q).epsilon);
        }
    }
}

TEST_CASE("generated prefixes are pseudo-convergent")
{
    for (const char *d : {"hensel:qp:7;g=x^2-2;a0=3", "hensel:qp:5;g=x^2+1;a0=3", "series:qp:5;expr=geom-squares",
                          "series:fpt:3;expr=geom-squares", "series:fpt:2;expr=geom"}) {
        const auto gen = parse_generator(d);
        const auto pre = PcsPrefix::from_generator(gen, 12);
        CHECK_MESSAGE(check_pcs(pre).ok, d);
        for (std::size_t r = 0; r < 12; ++r) {
            if (r + 1 < 12)
                CHECK(gen.gamma(r) < gen.gamma(r + 1));
            for (std::size_t s = r + 1; s < 12; ++s)
                CHECK(gen.field().val(pre.elements[s] - pre.elements[r]) == gen.gamma(r));
        }
        if (gen.is_hensel()) {
            const ExtValue d0 = gen.field().val(eval(gen.hensel_poly(), gen.element(0)));
            for (std::size_t r = 0; r < 12; ++r)
                CHECK(gen.field().val(eval(gen.hensel_poly(), gen.element(r))) == d0 + ExtValue(static_cast<long>(r)));
        }
    }
}

TEST_CASE("dominant index predictions")
{
    std::mt19937_64 rng(kSeed + 6);
    for (const char *d : {"hensel:qp:7;g=x^2-2;a0=3", "series:fpt:3;expr=geom-squares"}) {
        const auto gen = parse_generator(d);
        const Grid G = make_grid(gen.field());
        for (int s = 0; s < 20; ++s) {
            const Poly f = random_poly(G, 3, rng);
            if (f.degree() < 1)
                continue;
            try {
                const auto r = dominant_index(gen, f, 8);
                CHECK_MESSAGE(r.prediction_matches, d, " ", f.str());
                CHECK(r.power_of_exponent_characteristic);
            } catch (const std::runtime_error &) {
                // Indeterminate or an unfixed derivative: no claim
            }
        }
    }
}

TEST_CASE("registered suites pass at reduced sample counts")
{
    SuiteOptions o;
    o.samples = 40;
    o.seed = kSeed;
    for (const auto &name : suite_names()) {
        if (name == "all")
            continue;
        const auto r = run_suite(name, o, fixtures());
        CHECK_MESSAGE(r.ok(), name, ": ", r.failures.empty() ? "" : r.failures.front());
    }
}
