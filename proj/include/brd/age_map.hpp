#pragma once

// Labeled structures, realizations B[phi, A] and the bounded-witness decision
// procedure for age maps.

#include "brd/coding_tree.hpp"
#include "brd/forb_class.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brd {

struct LabeledStructure {
    Structure b;
    std::vector<Node> labels;  // labels[x] labels point x of b; all of one level
};

/// B[phi, A]: A_m on {0..m-1}, then B's points in order; R(i, b) = phi(b)(i).
/// With B empty there is no label to fix m, and the whole context is returned.
Structure realize(const Structure& b, const std::vector<Node>& labels, const Structure& context);

bool in_class(const ForbFamily& family, const Structure& b, const std::vector<Node>& labels, const Structure& context);

/// One side of an age-map question: nodes of one level m read against the
/// first m points of a context structure.
struct AgedSide {
    const Structure* context = nullptr;
    std::vector<Node> nodes;
};

struct AgeMapVerdict {
    bool is_age_map = true;
    std::string reason;
    std::optional<LabeledStructure> witness;  // labels are source nodes
    bool source_in = false;
    bool target_in = false;
    std::size_t checked = 0;
};

/// Decides whether source.nodes[i] -> target.nodes[i] is an age map. Labeled
/// structures (B, phi) are searched by |B| ascending up to max_b, B over the
/// members of K of that size in family order, phi lexicographic over the
/// source carrier. max_b < 0 selects maxF - 1.
AgeMapVerdict check_age_map(const ForbFamily& family, const AgedSide& source, const AgedSide& target, int max_b = -1);

/// Independent oracle: every pair table B (members or not) up to max_b points,
/// realized in full and tested with contains().
AgeMapVerdict check_age_map_bruteforce(const ForbFamily& family, const AgedSide& source, const AgedSide& target,
                                       int max_b);

using NodePairs = std::vector<std::pair<Node, Node>>;

/// f'(s^i) = f(s)^i for every pair (s, f(s)) and every i < k.
NodePairs prime_map(const NodePairs& f, int k);

/// Extends gamma (defined on part of T(m), into T(n)) to all of T(m) by
/// Left(t, n); the output lists T(m) in lexicographic order.
NodePairs extend_age_map_left(const NodePairs& gamma, std::size_t m, std::size_t n, int k);

}  // namespace brd
