#pragma once

// Aged embeddings of ct^A into the coding tree of a prefix: recognition,
// one-level extension, the left-most construction and bounded enumeration.

#include "brd/age_map.hpp"
#include "brd/limit.hpp"

#include <atomic>
#include <optional>

namespace brd {

struct AgedEmbedding {
    TreeMap f;
    std::vector<std::size_t> induced;  // f-tilde
};

struct AgedCheck {
    bool ok = false;
    int clause = 0;  // 1..5 embedding clauses, 6 age-map failure, 0 on success
    std::string failure;
    std::size_t level = 0;  // failing source level for clause 6
    std::optional<AgeMapVerdict> verdict;
    std::vector<std::size_t> induced;
};

AgedCheck check_aged_embedding(const TreeMap& f, const Structure& a, const Structure& ambient,
                               const ForbFamily& family);

/// Counters for the internal checks run while constructing aged embeddings:
/// the prime map of each top level is an age map, and so is each extended
/// level map. A failure also raises SelfCheckFailure.
struct SelfCheckStats {
    std::atomic<std::size_t> prime_checks{0};
    std::atomic<std::size_t> prime_failures{0};
    std::atomic<std::size_t> extend_checks{0};
    std::atomic<std::size_t> extend_failures{0};
};

SelfCheckStats& self_check_stats();

/// Level 0: f(empty) = c(l) for the least l with c(l) = 0^l and u(l) = u^A(0).
AgedEmbedding aged_embedding_base(const Structure& a, const LimitPrefix& prefix);

/// Extends f (defined on T(<m)) to T(<m+1). gamma sends every node
/// f(s)^i, s in T(m-1), to a node of T(n) above it.
AgedEmbedding extend_aged_embedding(const AgedEmbedding& f, const Structure& a, const NodePairs& gamma,
                                    const LimitPrefix& prefix);

/// Left-most aged embedding of ct^A (gamma = the prime map at every level).
AgedEmbedding find_aged_embedding(const Structure& a, const LimitPrefix& prefix);

struct AgedEnumeration {
    std::vector<AgedEmbedding> list;
    bool capped = false;
};

/// Every aged embedding with image levels <= max_level, stopping after cap.
AgedEnumeration enumerate_aged_embeddings(const Structure& a, const LimitPrefix& prefix, std::size_t max_level,
                                          std::size_t cap);

}  // namespace brd
