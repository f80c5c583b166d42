#pragma once

// Finite prefixes K_N of a left-dense enumeration of the Fraisse limit of K.

#include "brd/coding_tree.hpp"
#include "brd/forb_class.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace brd {

/// Level `level` realizes the extension (unary, relations) of K_base with an
/// all-zero tail on [base, level-1]. Demand levels were appended on request
/// rather than by the generator's schedule.
struct ScheduleEntry {
    std::size_t level = 0;
    std::size_t base = 0;
    Value unary = 0;
    Node relations;
    bool demand = false;

    bool operator==(const ScheduleEntry&) const = default;
};

class LimitPrefix {
public:
    LimitPrefix(ForbFamily family, Structure structure, std::vector<ScheduleEntry> schedule = {});

    const ForbFamily& family() const noexcept { return family_; }
    const Structure& structure() const noexcept { return structure_; }
    std::size_t size() const noexcept { return structure_.size(); }
    Node c(std::size_t n) const;
    Value u(std::size_t n) const { return structure_.unary(n); }
    const std::vector<ScheduleEntry>& schedule() const noexcept { return schedule_; }

    /// Least r >= min_level (and r >= |w|) with c(r) = Left(w, r) and u(r) = unary.
    std::optional<std::size_t> find_left(Value unary, const Node& w, std::size_t min_level) const;

    /// Appends a level whose coding node is Left(w, size()). Throws NotInClass
    /// when the new point would leave K.
    void append_level(Value unary, const Node& w, std::size_t base, bool demand);

private:
    void index_level(std::size_t n);

    ForbFamily family_;
    Structure structure_;
    std::vector<ScheduleEntry> schedule_;
    std::map<std::pair<Value, Node>, std::vector<std::size_t>> left_index_;
};

/// Deterministic left-dense prefix of size N. Obligations (m, type) are
/// popped by increasing m + i, where i is the type's position in K_m's list;
/// each K_m lists its valid types by number of nonzero positions, then unary
/// type, then support (top position first, lowest first), then digits. A
/// nonzero seed permutes the nonzero digits per position, the unary types,
/// and the order among obligations of equal m + i. Obligations already
/// met by an existing level are skipped without using a level.
LimitPrefix generate_prefix(const ForbFamily& family, std::size_t n, std::uint64_t seed);

struct DensityItem {
    std::size_t base = 0;
    ExtensionType ext;
    std::optional<std::size_t> witness;
};

struct DensityReport {
    std::size_t horizon = 0;
    std::vector<DensityItem> items;
    std::size_t met = 0;
    std::size_t unmet = 0;
    /// Schedule entries whose level does not carry the promised extension.
    std::vector<std::string> violations;
};

DensityReport verify_left_dense(const LimitPrefix& prefix, std::size_t horizon);

}  // namespace brd
