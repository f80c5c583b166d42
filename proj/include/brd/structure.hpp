#pragma once

// Normalized binary relational language and finite enumerated structures.
//
// A structure on {0..n-1} assigns every point one unary type and every ordered
// pair of distinct points one relation value; value 0 means "no relation".
// Both directions of every pair are stored and must agree through the
// language's flip involution.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace brd {

using Value = std::uint8_t;

struct Language {
    int k = 2;
    std::vector<Value> flip;  // flip[i] is the value seen from the other side
    int unary_types = 2;      // unary values >= unary_types never hold

    Language() : Language(2) {}
    explicit Language(int k, std::vector<Value> flip = {}, int unary_types = -1);

    /// Simple graphs: k = 2, identity flip, a single usable unary type.
    static Language graph();

    Value flip_of(Value v) const { return flip[v]; }
    bool operator==(const Language&) const = default;
};

struct RelEntry {
    std::size_t a = 0;
    std::size_t b = 0;
    Value value = 0;
};

class Structure {
public:
    explicit Structure(Language lang = Language::graph());

    const Language& language() const noexcept { return lang_; }
    std::size_t size() const noexcept { return unary_.size(); }

    Value unary(std::size_t a) const { return unary_[a]; }
    const std::vector<Value>& unary_values() const noexcept { return unary_; }

    /// Relation value R(a, b); undefined (returns 0) on the diagonal.
    Value rel(std::size_t a, std::size_t b) const
    {
        if (a < b) return up_[offset(b) + a];
        if (b < a) return down_[offset(a) + b];
        return 0;
    }

    /// Relations R(i, j) for i < j: exactly the coding node of level j.
    std::span<const Value> column(std::size_t j) const
    {
        return {up_.data() + offset(j), j};
    }

    /// Adds point n with the given unary type and R(i, n) = column[i].
    void append(Value unary, std::span<const Value> column);

    bool operator==(const Structure& other) const;

private:
    static std::size_t offset(std::size_t j) { return j * (j - 1) / 2; }

    Language lang_;
    std::vector<Value> unary_;
    std::vector<Value> up_;    // R(i, j), i < j, column-major by j
    std::vector<Value> down_;  // R(j, i), i < j, same layout
};

/// Builds a structure from a possibly partial pair table. Missing directions
/// are derived through flip; every convention violation is reported.
Structure validate_structure(const Language& lang, const std::vector<Value>& unary,
                             const std::vector<RelEntry>& rel);

/// Convenience for fixtures: symmetric edges with value 1 on a language with
/// identity flip on 1.
Structure make_graph(const Language& lang, std::size_t n,
                     const std::vector<std::pair<std::size_t, std::size_t>>& edges);

Structure induced_substructure(const Structure& a, std::span<const std::size_t> indices);

/// Restriction to {0..m-1}.
Structure initial_segment(const Structure& a, std::size_t m);

struct StructMap {
    std::vector<std::size_t> values;
    bool ordered = false;

    bool operator==(const StructMap&) const = default;
};

bool is_embedding(const Structure& source, const Structure& target,
                  std::span<const std::size_t> values);

/// All embeddings of a into b (ordered ones only when requested), in
/// lexicographic order of their value sequences.
std::vector<StructMap> enumerate_embeddings(const Structure& a, const Structure& b, bool ordered);

bool is_irreducible(const Structure& a);

struct Amalgam {
    Structure d;
    StructMap r;  // B -> D
    StructMap s;  // C -> D
};

/// Free amalgam of f: A -> B and g: A -> C. D lists B's points first, then
/// C's points outside g's image in their original order.
Amalgam free_amalgam(const Structure& a, const Structure& b, const StructMap& f,
                     const Structure& c, const StructMap& g);

std::string describe(const Structure& a);

}  // namespace brd
