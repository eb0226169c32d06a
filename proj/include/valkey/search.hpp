#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "valkey/xval.hpp"

namespace valkey {

/// Finite set of coefficients explored by bounded searches.
struct Grid {
    ValuedField field;
    std::vector<FieldElem> coeffs; ///< distinct, canonical order, contains 0
    std::string spec;              ///< reproducible description
};

/// {c·u^k : c in [c_lo, c_hi], k in [k_lo, k_hi]} with u = p or t.
Grid make_grid(const ValuedField &F, long c_lo = -2, long c_hi = 2, long k_lo = -2, long k_hi = 3);
/// Explicit coefficient list.
Grid make_grid(const ValuedField &F, const std::vector<FieldElem> &coeffs);
/// `c=<lo>..<hi>;k=<lo>..<hi>` or a comma-separated list of constants.
Grid parse_grid(const ValuedField &F, std::string_view spec);

struct SearchConfig {
    Grid grid;
    std::size_t budget = 20000; ///< cap on candidates per enumeration
    unsigned window = 8;        ///< generator depth used for hints and families
};

SearchConfig default_config(const ValuedField &F);

/// Monic polynomials of exact degree d with lower coefficients in the grid, in
/// canonical order. Returns an empty list when the count exceeds `limit`.
std::vector<Poly> monic_grid_polys(const Grid &grid, int d, std::size_t limit);
/// All monic grid polynomials of degree 1..max_deg (each degree subject to `limit`).
std::vector<Poly> monic_grid_corpus(const Grid &grid, int max_deg, std::size_t limit);

/// Structured candidates that the plain grid misses: the keys of a chain, the
/// Hensel polynomial, and the family x - a_ρ for ρ < window.
std::vector<Poly> valuation_hints(const XValuation &V, unsigned window);

/// Sorted by canonical order with duplicates removed.
void canonicalize(std::vector<Poly> &v);

/// Deterministic random polynomial of degree <= max_deg with grid coefficients.
Poly random_poly(const Grid &grid, int max_deg, std::mt19937_64 &rng, bool monic = false);

} // namespace valkey
