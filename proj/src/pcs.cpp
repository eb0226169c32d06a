#include "valkey/pcs.hpp"

#include <algorithm>

#include "valkey/errors.hpp"

namespace valkey {

PcsPrefix PcsPrefix::from_generator(const PcsGenerator &gen, std::size_t m)
{
    return PcsPrefix{gen.field(), gen.prefix(m)};
}

std::vector<ExtValue> PcsPrefix::gamma() const
{
    std::vector<ExtValue> out;
    for (std::size_t r = 0; r + 1 < elements.size(); ++r)
        out.push_back(field.val(elements[r + 1] - elements[r]));
    return out;
}

PcsCheck check_pcs(const PcsPrefix &prefix)
{
    const auto &a = prefix.elements;
    if (a.size() < 2)
        throw InputError("a pseudo-convergent prefix needs at least two elements");
    PcsCheck c;
    c.gamma = prefix.gamma();
    const std::size_t m = a.size();
    std::vector<std::vector<ExtValue>> d(m, std::vector<ExtValue>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i][j] = prefix.field.val(a[j] - a[i]);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = r + 1; s < m; ++s)
            for (std::size_t t = s + 1; t < m; ++t)
                if (!(d[r][s] < d[s][t])) {
                    c.ok = false;
                    c.violation = {r, s, t};
                    return c;
                }
    return c;
}

PcsGenerator hensel_generator(const ValuedField &F, const Poly &g, const FieldElem &a0)
{
    return PcsGenerator::hensel(F, g, a0);
}

namespace {

bool taylor_certifies(const PcsGenerator &gen, const Poly &f, std::size_t rho)
{
    const ValuedField &F = gen.field();
    const auto T = taylor_expansion(f, gen.element(rho));
    const ExtValue v0 = F.val(T[0]);
    for (std::size_t i = 1; i < T.size(); ++i)
        if (!(v0 < F.val(T[i]) + gen.gamma(rho).scaled(static_cast<long>(i))))
            return false;
    return true;
}

std::optional<FixedValueReport> detect(const PcsGenerator &gen, const Poly &f, unsigned W, bool allow_increasing)
{
    const ValuedField &F = gen.field();
    FixedValueReport r;
    r.window = W;
    for (unsigned rho = 0; rho < W; ++rho)
        r.values.push_back(F.val(eval(f, gen.element(rho))));
    const auto &v = r.values;
    // earliest start of a constant run reaching the end of the window
    std::size_t start = W - 1;
    while (start > 0 && v[start - 1] == v[W - 1])
        --start;
    for (std::size_t rho = start; rho + 1 < W; ++rho) {
        if (!(v[rho] < gen.gamma(rho)))
            continue;
        bool cert = false;
        for (std::size_t s = rho; s < W && !cert; ++s)
            cert = taylor_certifies(gen, f, s);
        if (!cert)
            break;
        r.status = FixedValueReport::Status::Fixed;
        r.value = v[rho];
        r.rho_f = rho;
        return r;
    }
    if (!allow_increasing)
        return std::nullopt;
    std::size_t first = 0;
    while (first < W && v[first].is_inf())
        ++first;
    if (W - first < 3)
        return std::nullopt;
    for (std::size_t i = first + 1; i < W; ++i)
        if (!(v[i - 1] < v[i]))
            return std::nullopt;
    r.status = FixedValueReport::Status::Increasing;
    return r;
}

} // namespace

FixedValueReport fixed_value(const PcsGenerator &gen, const Poly &f, unsigned window)
{
    if (window < 3)
        throw InputError("fixed_value needs a window of at least 3");
    if (f.is_zero())
        throw InputError("the zero polynomial has no fixed value");
    if (f.is_constant()) {
        FixedValueReport r;
        r.value = gen.field().val(f.coeff(0));
        r.values.assign(window, r.value);
        r.window = window;
        return r;
    }
    if (auto r = detect(gen, f, window, false))
        return *r;
    if (auto r = detect(gen, f, 2 * window, true))
        return *r;
    throw Indeterminate("value of " + f.str() + " is neither fixed nor increasing within window " +
                        std::to_string(2 * window));
}

namespace {

bool is_power_of(unsigned h, unsigned q)
{
    if (q == 1)
        return h == 1;
    while (h % q == 0)
        h /= q;
    return h == 1;
}

} // namespace

DominantIndex dominant_index(const PcsGenerator &gen, const Poly &f, unsigned window)
{
    if (f.degree() < 1)
        throw MathError("DegenerateConstant: the dominant index of a constant is undefined");
    const ValuedField &F = gen.field();
    DominantIndex r;
    std::size_t start = 0;
    for (int i = 1; i <= f.degree(); ++i) {
        const Poly d = hasse_derivative(f, i);
        if (d.is_zero())
            continue;
        const auto fv = fixed_value(gen, d, window);
        if (fv.status != FixedValueReport::Status::Fixed)
            throw HypothesisViolated("derivative of order " + std::to_string(i) + " is not fixed");
        r.beta.emplace_back(static_cast<unsigned>(i), fv.value);
        start = std::max(start, fv.rho_f);
    }
    auto argmin = [&](std::size_t rho) -> std::optional<unsigned> {
        std::optional<std::pair<ExtValue, unsigned>> best;
        bool tie = false;
        for (const auto &[i, b] : r.beta) {
            const ExtValue m = b + gen.gamma(rho).scaled(i);
            if (!best || m < best->first) {
                best.emplace(m, i);
                tie = false;
            } else if (m == best->first) {
                tie = true;
            }
        }
        if (!best || tie)
            return std::nullopt;
        return best->second;
    };
    for (unsigned W : {window, 2 * window}) {
        if (start + 2 > W)
            continue;
        std::optional<unsigned> h = argmin(W - 1);
        if (!h)
            continue;
        std::size_t t = W - 1;
        while (t > start && argmin(t - 1) == h)
            --t;
        if (t + 2 > W)
            continue;
        r.h = *h;
        r.tail_start = t;
        r.window = W;
        break;
    }
    if (r.h == 0)
        throw Indeterminate("no stable dominant index within window " + std::to_string(2 * window));

    const ExtValue beta_h = std::find_if(r.beta.begin(), r.beta.end(), [&](auto &p) { return p.first == r.h; })->second;
    std::size_t settled = 0;
    try {
        const auto fv = fixed_value(gen, f, window);
        r.f_fixed = fv.status == FixedValueReport::Status::Fixed;
        settled = fv.rho_f;
    } catch (const Indeterminate &) {
        r.f_fixed = false;
    }
    r.difference_identity = true;
    r.prediction_matches = true;
    for (std::size_t rho = r.tail_start; rho < r.window; ++rho) {
        const ExtValue pred = beta_h + gen.gamma(rho).scaled(r.h);
        const ExtValue obs = F.val(eval(f, gen.element(rho)));
        r.predicted.push_back(pred);
        r.observed.push_back(obs);
        const ExtValue diff = F.val(eval(f, gen.element(rho + 1)) - eval(f, gen.element(rho)));
        r.difference_identity = r.difference_identity && diff == pred;
        if (!r.f_fixed)
            r.prediction_matches = r.prediction_matches && obs == pred;
        else if (rho >= settled)
            r.prediction_matches = r.prediction_matches && obs <= pred;
    }
    r.power_of_exponent_characteristic = is_power_of(r.h, F.exponent_characteristic());
    return r;
}

TypeReport classify_type(const PcsGenerator &gen, int degree_bound, unsigned window, const Grid &grid)
{
    TypeReport r;
    r.degree_bound = degree_bound;
    int top = degree_bound;
    if (gen.is_hensel())
        top = std::min(degree_bound, gen.hensel_poly().degree() - 1);
    for (int d = 1; d <= top; ++d) {
        for (const auto &f : monic_grid_polys(grid, d, 1u << 20)) {
            ++r.examined;
            if (fixed_value(gen, f, window).status == FixedValueReport::Status::Increasing) {
                r.algebraic = true;
                r.q_min = f;
                return r;
            }
        }
    }
    if (gen.is_hensel() && gen.hensel_poly().degree() <= degree_bound) {
        r.algebraic = true;
        r.q_min = gen.hensel_poly();
    }
    return r;
}

AgreementReport verify_truncation_agreement(const XValuation &V, const PcsGenerator &gen, const Poly &f,
                                            unsigned window)
{
    if (!V.generator() || V.generator()->descriptor() != gen.descriptor())
        throw InputError("valuation and generator do not share the same sequence");
    const ValuedField &F = V.field();
    const auto fv = fixed_value(gen, f, window);
    AgreementReport r;
    r.fixed = fv.status == FixedValueReport::Status::Fixed;
    r.rho_f = fv.rho_f;
    r.value = V(f);
    r.identity_holds = true;
    r.dichotomy_holds = true;
    for (std::size_t rho = 0; rho < fv.window; ++rho) {
        const FieldElem a = gen.element(rho);
        const ExtValue t = truncate(V, Poly::linear(F, a), f);
        const ExtValue e = F.val(eval(f, a));
        r.truncations.push_back(t);
        r.evaluations.push_back(e);
        if (r.fixed) {
            if (rho >= r.rho_f) {
                r.dichotomy_holds = r.dichotomy_holds && t == r.value;
                r.identity_holds = r.identity_holds && t == e;
            }
        } else {
            r.dichotomy_holds = r.dichotomy_holds && t < r.value;
            r.identity_holds = r.identity_holds && t == e;
        }
    }
    return r;
}

void check_no_limit_in_field(const PcsGenerator &gen, unsigned window, const Grid &grid)
{
    const ValuedField &F = gen.field();
    std::vector<FieldElem> cands = grid.coeffs;
    if (auto L = gen.declared_limit())
        cands.push_back(*L);
    for (const auto &a : cands) {
        bool limit = true;
        for (unsigned rho = 0; rho < window && limit; ++rho)
            limit = F.val(a - gen.element(rho)) == gen.gamma(rho);
        if (limit)
            throw HypothesisViolated("LimitInK: " + a.str() + " is a pseudo-limit of the sequence in K");
    }
}

SequenceKeysReport verify_sequence_keys(const PcsGenerator &gen, int degree_bound, unsigned window,
                                        const Grid &grid)
{
    check_no_limit_in_field(gen, window, grid);
    const ValuedField &F = gen.field();
    SequenceKeysReport r;
    r.type = classify_type(gen, degree_bound, window, grid);
    const SearchConfig cfg{grid, 20000, window};
    if (r.type.algebraic) {
        if (!gen.is_hensel())
            throw Unsupported("algebraic-type series generators have no root valuation");
        const XValuation V = XValuation::root(F, gen.hensel_poly(), gen.element(0));
        r.limit = classify_limit(V, *r.type.q_min, Poly::linear(F, gen.element(0)), cfg);
        r.holds = r.limit->overall;
        return r;
    }
    const XValuation V = gen.is_hensel() ? XValuation::root(F, gen.hensel_poly(), gen.element(0))
                                         : XValuation::limit(gen);
    for (const auto &f : monic_grid_corpus(grid, degree_bound, cfg.budget)) {
        const ExtValue v = V(f);
        bool found = false;
        for (std::size_t rho = 0; rho < 2 * window && !found; ++rho)
            if (truncate(V, Poly::linear(F, gen.element(rho)), f) == v) {
                r.witnesses.push_back({f, rho, v});
                found = true;
            }
        if (!found)
            r.unwitnessed.push_back(f);
    }
    r.holds = r.unwitnessed.empty();
    return r;
}

} // namespace valkey
