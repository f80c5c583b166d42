#pragma once

// The degree bound l, the ordered decomposition of embeddings and a finite
// coloring probe.

#include "brd/envelope.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace brd {

inline constexpr std::size_t default_census_cap = 1'000'000;

/// counts[d-1] = number of members of K on {0..d-1}, for d = 1..max_d.
std::vector<std::uint64_t> census(const ForbFamily& family, std::size_t max_d, std::size_t cap = default_census_cap);

/// Generate-and-filter over every pair table; small d only.
std::vector<std::uint64_t> census_oracle(const ForbFamily& family, std::size_t max_d);

struct DegreeBoundReport {
    std::uint64_t d = 0;
    std::uint64_t ell = 0;
    std::vector<std::uint64_t> census;
};

/// l = sum of census counts for 1 <= d <= D; D defaults to the envelope size
/// bound for |A|.
DegreeBoundReport degree_bound(const Structure& a, const ForbFamily& family, std::optional<std::uint64_t> d = {},
                               std::size_t cap = default_census_cap);

struct OrderedVariant {
    Structure table;
    std::vector<std::vector<std::size_t>> sigmas;  // bijections with A.sigma equal to table
};

/// One entry per distinct table A.sigma, where (A.sigma)(i, j) = A(sigma(i), sigma(j)).
std::vector<OrderedVariant> ordered_decomposition(const Structure& a);

struct PartitionCheck {
    std::size_t embeddings = 0;     // |Emb(A, host)|
    std::size_t decomposed = 0;     // sum over sigma of |OEmb(A.sigma, host)|
    std::size_t uncovered = 0;      // embeddings reached by no sigma
    std::size_t multiply = 0;       // embeddings reached more than once
    std::vector<std::size_t> per_variant;
    bool exact() const { return uncovered == 0 && multiply == 0 && embeddings == decomposed; }
};

PartitionCheck check_partition(const Structure& a, const std::vector<OrderedVariant>& variants, const Structure& host);

/// A coloring of ordered embeddings, given by their value sequences.
using Coloring = std::function<std::string(const std::vector<std::size_t>&)>;

Coloring constant_coloring();
/// For two-point A: whether the two image levels are related.
Coloring edge_coloring(const LimitPrefix& prefix);
/// Shape of the closure of the image levels: relative coding-node digits,
/// roles, unary types, meet positions and Sp/AC/Start annotations.
Coloring canonical_coloring(const LimitPrefix& prefix);

struct ColoringExperiment {
    std::size_t window = 0;
    std::vector<std::size_t> eta;  // best ordered embedding of K_window found
    std::size_t colors = 0;
    std::vector<std::string> palette;
    std::size_t explored = 0;
    bool budget_exhausted = false;
};

/// Searches ordered embeddings eta of the window K_w into the prefix (at most
/// budget of them, in lexicographic order) for the fewest colors on
/// eta . OEmb(A, K_w). No optimality claim.
ColoringExperiment run_coloring_experiment(const LimitPrefix& prefix, const Structure& a, const Coloring& chi,
                                           std::size_t window, std::size_t budget, unsigned jobs = 1);

/// Number of colors on eta . OEmb(A, K_w), recomputed from scratch.
std::size_t count_colors(const LimitPrefix& prefix, const Structure& a, const Coloring& chi, std::size_t window,
                         const std::vector<std::size_t>& eta);

}  // namespace brd
