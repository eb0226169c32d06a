#include "valkey/search.hpp"

#include <algorithm>
#include <charconv>

#include "valkey/errors.hpp"
#include "valkey/parse.hpp"

namespace valkey {

namespace {

void sort_unique(std::vector<FieldElem> &v)
{
    std::sort(v.begin(), v.end(), [](const FieldElem &a, const FieldElem &b) { return canonical_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

long parse_long(std::string_view s, std::string_view whole)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(whole, 0, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::pair<long, long> parse_range(std::string_view r, std::string_view whole)
{
    const auto dots = r.find("..");
    if (dots == std::string_view::npos)
        throw ParseError(whole, 0, "expected <lo>..<hi>");
    long lo = parse_long(r.substr(0, dots), whole), hi = parse_long(r.substr(dots + 2), whole);
    if (lo > hi)
        throw ParseError(whole, 0, "empty range");
    return {lo, hi};
}

} // namespace

Grid make_grid(const ValuedField &F, long c_lo, long c_hi, long k_lo, long k_hi)
{
    Grid g{F, {F.zero()}, {}};
    for (long c = c_lo; c <= c_hi; ++c)
        for (long k = k_lo; k <= k_hi; ++k)
            g.coeffs.push_back(F.from_int(c) * F.uniformizer_power(k));
    sort_unique(g.coeffs);
    g.spec = "c=" + std::to_string(c_lo) + ".." + std::to_string(c_hi) + ";k=" + std::to_string(k_lo) +
             ".." + std::to_string(k_hi);
    return g;
}

Grid make_grid(const ValuedField &F, const std::vector<FieldElem> &coeffs)
{
    Grid g{F, coeffs, {}};
    g.coeffs.push_back(F.zero());
    sort_unique(g.coeffs);
    for (std::size_t i = 0; i < g.coeffs.size(); ++i)
        g.spec += (i ? "," : "") + g.coeffs[i].str();
    return g;
}

Grid parse_grid(const ValuedField &F, std::string_view spec)
{
    if (spec.rfind("c=", 0) == 0) {
        const auto parts = split_top_level(spec, ';');
        if (parts.size() != 2 || parts[1].rfind("k=", 0) != 0)
            throw ParseError(spec, 0, "expected c=<lo>..<hi>;k=<lo>..<hi>");
        auto [clo, chi] = parse_range(std::string_view(parts[0]).substr(2), spec);
        auto [klo, khi] = parse_range(std::string_view(parts[1]).substr(2), spec);
        return make_grid(F, clo, chi, klo, khi);
    }
    std::vector<FieldElem> cs;
    for (const auto &item : split_top_level(spec, ','))
        cs.push_back(parse_elem(F, item));
    return make_grid(F, cs);
}

SearchConfig default_config(const ValuedField &F) { return SearchConfig{make_grid(F), 20000, 8}; }

std::vector<Poly> monic_grid_polys(const Grid &grid, int d, std::size_t limit)
{
    if (d < 1)
        return {};
    const std::size_t n = grid.coeffs.size();
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) {
        if (count > limit / n)
            return {};
        count *= n;
    }
    std::vector<Poly> out;
    out.reserve(count);
    // odometer over the d lower coefficients, highest position varying slowest
    std::vector<std::size_t> idx(d, 0);
    const FieldElem one = grid.field.one();
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<FieldElem> c(d + 1);
        for (int i = 0; i < d; ++i)
            c[i] = grid.coeffs[idx[i]];
        c[d] = one;
        out.emplace_back(grid.field, std::move(c));
        for (int i = 0; i < d; ++i) {
            if (++idx[i] < n)
                break;
            idx[i] = 0;
        }
    }
    canonicalize(out);
    return out;
}

std::vector<Poly> monic_grid_corpus(const Grid &grid, int max_deg, std::size_t limit)
{
    std::vector<Poly> out;
    for (int d = 1; d <= max_deg; ++d) {
        auto part = monic_grid_polys(grid, d, limit);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Poly> valuation_hints(const XValuation &V, unsigned window)
{
    std::vector<Poly> out;
    switch (V.kind()) {
    case XValuation::Kind::Gauss:
    case XValuation::Kind::Augmented:
        for (const auto &[Q, g] : V.chain())
            out.push_back(Q);
        break;
    case XValuation::Kind::Root:
        out.push_back(V.key());
        [[fallthrough]];
    case XValuation::Kind::Limit:
        for (unsigned r = 0; r < window; ++r)
            out.push_back(Poly::linear(V.field(), V.generator()->element(r)));
        if (auto L = V.generator()->declared_limit())
            out.push_back(Poly::linear(V.field(), *L));
        break;
    }
    canonicalize(out);
    return out;
}

void canonicalize(std::vector<Poly> &v)
{
    std::sort(v.begin(), v.end(), [](const Poly &a, const Poly &b) { return canonical_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Poly random_poly(const Grid &grid, int max_deg, std::mt19937_64 &rng, bool monic)
{
    const int lo = monic ? 1 : 0;
    const int d = std::uniform_int_distribution<int>(lo, std::max(lo, max_deg))(rng);
    std::uniform_int_distribution<std::size_t> pick(0, grid.coeffs.size() - 1);
    std::vector<FieldElem> c(d + 1);
    for (int i = 0; i <= d; ++i)
        c[i] = grid.coeffs[pick(rng)];
    if (monic)
        c[d] = grid.field.one();
    else if (c[d].is_zero())
        c[d] = grid.field.one();
    return Poly(grid.field, std::move(c));
}

} // namespace valkey
