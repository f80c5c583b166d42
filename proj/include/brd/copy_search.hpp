#pragma once

// Anchored search for copies of an irreducible pattern inside a host.
//
// Every pair of points of an irreducible pattern is related, so once one
// pattern point is pinned to the anchor, all other images lie among the
// anchor's related points (the pool). Hosts expose unary(x) and rel(x, y).

#include "brd/structure.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace brd::detail {

template <class Host>
bool extend_copy(const Structure& pattern, const Host& host, std::span<const std::size_t> pool,
                 std::vector<std::size_t>& image, std::vector<char>& assigned, std::size_t next)
{
    const std::size_t f = pattern.size();
    while (next < f && assigned[next]) ++next;
    if (next == f) return true;

    for (std::size_t p : pool) {
        if (host.unary(p) != pattern.unary(next)) continue;
        bool ok = true;
        for (std::size_t w = 0; w < f && ok; ++w) {
            if (!assigned[w]) continue;
            ok = image[w] != p && host.rel(image[w], p) == pattern.rel(w, next);
        }
        if (!ok) continue;
        image[next] = p;
        assigned[next] = 1;
        if (extend_copy(pattern, host, pool, image, assigned, next + 1)) return true;
        assigned[next] = 0;
    }
    return false;
}

/// True when some embedding of the irreducible pattern into the host maps a
/// pattern point onto anchor, all other points landing in pool.
template <class Host>
bool has_copy_through(const Structure& pattern, const Host& host, std::size_t anchor,
                      std::span<const std::size_t> pool)
{
    const std::size_t f = pattern.size();
    if (f == 0) return true;
    if (pool.size() + 1 < f) return false;
    std::vector<std::size_t> image(f, 0);
    std::vector<char> assigned(f, 0);
    for (std::size_t v0 = 0; v0 < f; ++v0) {
        if (pattern.unary(v0) != host.unary(anchor)) continue;
        image[v0] = anchor;
        assigned[v0] = 1;
        if (extend_copy(pattern, host, pool, image, assigned, 0)) return true;
        assigned[v0] = 0;
    }
    return false;
}

struct StructureHost {
    const Structure& s;
    Value unary(std::size_t x) const { return s.unary(x); }
    Value rel(std::size_t x, std::size_t y) const { return s.rel(x, y); }
};

}  // namespace brd::detail
