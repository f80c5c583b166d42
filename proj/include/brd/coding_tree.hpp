#pragma once

// The tree T = k^{<omega} at finite depth and the coding-tree bijection
// between enumerated structures and per-level (coding node, unary type) pairs.

#include "brd/structure.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace brd {

/// A word over {0..k-1}; its length is the level. The root is the empty word.
using Node = std::vector<Value>;

Node node_meet(const Node& s, const Node& t);
/// s padded with zeros to length n.
Node node_left(const Node& s, std::size_t n);
Node node_restrict(const Node& s, std::size_t n);
/// s is an initial segment of t.
bool node_below(const Node& s, const Node& t);
/// Number of leading zeros: the largest n with s|n = 0^n.
std::size_t leading_zeros(const Node& s);
/// s with trailing zeros removed.
Node node_support(const Node& s);

inline constexpr std::size_t default_successor_cap = std::size_t{1} << 20;

/// Succ(s, n) in lexicographic order.
std::vector<Node> successors(const Node& s, std::size_t n, int k, std::size_t cap = default_successor_cap);
std::vector<Node> immediate_successors(const Node& s, int k);

/// Position of s among T(|s|) in lexicographic order, and its inverse.
std::size_t node_index(const Node& s, int k);
Node node_at(std::size_t index, std::size_t level, int k);
/// |T(m)| = k^m, throwing CombinatorialExplosion above cap.
std::size_t level_width(int k, std::size_t m, std::size_t cap = default_successor_cap);

std::string node_to_string(const Node& s);
Node node_from_string(const std::string& text, int k);

struct CodingTree {
    Language lang;
    std::vector<Node> c;
    std::vector<Value> u;

    std::size_t size() const noexcept { return c.size(); }
    bool operator==(const CodingTree&) const = default;
};

CodingTree coding_tree_of(const Structure& a);
Structure structure_of(const CodingTree& ct);

/// A total map on T(<n): level[m][node_index(t)] is the image of t in T(m).
struct TreeMap {
    int k = 2;
    std::vector<std::vector<Node>> level;

    std::size_t depth() const noexcept { return level.size(); }
    const Node& operator()(const Node& t) const { return level[t.size()][node_index(t, k)]; }
};

struct EmbeddingCheck {
    bool ok = false;
    int clause = 0;  // first failing clause (1..5), 0 on success
    std::string failure;
    std::vector<std::size_t> induced;
};

/// The five embedding clauses of a tree map f on T(<|A|) into the coding tree
/// of the ambient structure. Clause 5 (coding nodes and types) can be skipped,
/// which leaves the strong-similarity conditions.
EmbeddingCheck check_embedding(const TreeMap& f, const Structure& a, const Structure& ambient,
                               bool coding_clause = true);

}  // namespace brd
