#pragma once

// The class K = Forb(F) of finite structures omitting a finite family of
// irreducible structures.

#include "brd/structure.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace brd {

/// One-point extension data over a base of size base_size: the new point's
/// unary type and R(j, new) for every j < base_size.
struct ExtensionType {
    std::size_t base_size = 0;
    Value unary = 0;
    std::vector<Value> relations;

    auto operator<=>(const ExtensionType&) const = default;
};

class ForbFamily {
public:
    ForbFamily(Language lang, std::vector<Structure> forbidden);

    const Language& language() const noexcept { return lang_; }
    const std::vector<Structure>& forbidden() const noexcept { return forbidden_; }
    /// maxF: the largest forbidden size, 0 when F is empty.
    std::size_t max_forbidden_size() const noexcept { return max_size_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// All members of K on {0..n-1}, each listed once, ordered by their
    /// restriction to {0..n-2} and then by extension type. Cached.
    const std::vector<Structure>& members(std::size_t n) const;

private:
    struct Cache;

    Language lang_;
    std::vector<Structure> forbidden_;
    std::size_t max_size_ = 0;
    std::vector<std::string> warnings_;
    std::shared_ptr<Cache> cache_;
};

/// Index of the first forbidden structure embedding into a, if any.
std::optional<std::size_t> first_forbidden_copy(const ForbFamily& family, const Structure& a);

bool contains(const ForbFamily& family, const Structure& a);

/// Whether base_{<m} plus a new point with the given unary type and
/// R(j, new) = column[j] lies in K. Assumes the base restriction is in K.
bool extension_in_class(const ForbFamily& family, const Structure& base, std::size_t m, Value unary,
                        std::span<const Value> column);

/// Enumerated members of K that embed into some forbidden structure, by size
/// then table order. For F empty: one singleton per usable unary type.
std::vector<Structure> irr_structures(const ForbFamily& family);

/// Every extension type of base whose one-point extension lies in K, in
/// lexicographic (unary, relations) order.
std::vector<ExtensionType> valid_extensions(const ForbFamily& family, const Structure& base);

/// Flat key ordering structures of equal size: unary values then columns.
std::vector<Value> table_key(const Structure& a);

}  // namespace brd
