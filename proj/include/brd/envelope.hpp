#pragma once

// Critical values, envelopes, closure and interior for level sets of a
// prefix's coding tree.

#include "brd/aged_embedding.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace brd {

/// Sorted, duplicate-free set of levels.
using LevelSet = std::vector<std::size_t>;

LevelSet normalize_levels(std::vector<std::size_t> levels);

struct AgeChange {
    std::size_t level = 0;
    AgeMapVerdict verdict;
};

struct CritReport {
    LevelSet levels;
    LevelSet sp;
    std::vector<AgeChange> ac;
    std::vector<std::size_t> start;  // Start(s) for each s, in order of levels

    LevelSet crit() const;
};

/// How pi_m: c[S]|_{m+1} -> T(m) behaves at one level m < max S.
struct PiResult {
    bool injective = true;
    AgeMapVerdict verdict;
};

PiResult pi_map(const LevelSet& s, std::size_t m, const LimitPrefix& prefix);

CritReport crit(const LevelSet& s, const LimitPrefix& prefix);

enum class EnvelopeMode { Combinatorial, Definitional };

struct EnvelopeVerdict {
    bool is_envelope = false;
    std::string reason;
    std::optional<TreeMap> construction;  // definitional mode only
};

EnvelopeVerdict check_envelope(const LevelSet& s, const LimitPrefix& prefix, EnvelopeMode mode);
bool is_envelope(const LevelSet& s, const LimitPrefix& prefix, EnvelopeMode mode = EnvelopeMode::Combinatorial);

/// Top-down closure: from max S downwards, m joins when m is in S, when two
/// chosen coding nodes meet at m, or when pi_m is not an age map.
LevelSet closure(const LevelSet& s, const LimitPrefix& prefix);

/// Interior recursion; levels listed in the order they were added.
std::vector<std::size_t> interior(const LevelSet& e, const LimitPrefix& prefix);

/// Saturating (s-1) + sum over I in Irr(K), j < s of (k^|I|)^(j+1).
std::uint64_t crit_bound(std::size_t s, const ForbFamily& family);

/// Closed-form bound D_n on |closure(S)| for S in the range of a nice
/// embedding with |S| <= n. For F empty the bound is 2n - 1.
std::uint64_t envelope_size_bound(std::size_t n, const ForbFamily& family);

}  // namespace brd
