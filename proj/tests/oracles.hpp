#pragma once

// Brute-force reference implementations. They share no search code with the
// library: every map, subset and table is enumerated in full.

#include "brd/degrees.hpp"
#include "brd/error.hpp"
#include "brd/io.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace oracle {

using namespace brd;

inline std::string fixture(const std::string& name)
{
    return std::string(BRD_FIXTURES) + "/" + name;
}

inline ForbFamily load_family(const std::string& name)
{
    return family_from_json(load_json_file(fixture(name)));
}

inline Structure load_structure(const std::string& name)
{
    return structure_from_json(load_json_file(fixture(name)));
}

inline Structure load_structure(const std::string& name, const Language& lang)
{
    return structure_from_json(load_json_file(fixture(name)), lang);
}

/// Every map {0..m-1} -> {0..n-1} by counting in base n, kept when injective
/// and relation preserving.
inline std::vector<std::vector<std::size_t>> embeddings(const Structure& a, const Structure& b, bool ordered)
{
    std::vector<std::vector<std::size_t>> out;
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (m == 0) return {{}};
    if (n == 0) return out;
    std::vector<std::size_t> v(m, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            ok = a.unary(i) == b.unary(v[i]);
            for (std::size_t j = 0; j < m && ok; ++j) {
                if (i == j) continue;
                ok = v[i] != v[j] && a.rel(i, j) == b.rel(v[i], v[j]);
                if (ordered && i < j) ok = ok && v[i] < v[j];
            }
        }
        if (ok) out.push_back(v);
        std::size_t i = m;
        while (i > 0 && ++v[i - 1] == n) v[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

inline bool member(const ForbFamily& f, const Structure& a)
{
    for (const Structure& x : f.forbidden()) {
        if (!embeddings(x, a, false).empty()) return false;
    }
    return true;
}

/// A uniformly chosen one-point extension at every step, among those that stay in K.
inline Structure random_member(const ForbFamily& f, std::size_t n, std::mt19937_64& rng)
{
    // Random greedy growth: each point gets a usable unary type, then each
    // earlier point in random order a random value, kept if still in K.
    // Not uniform, but every member of size n has positive probability.
    const Language& lang = f.language();
    Structure a(lang);
    std::vector<Value> col;
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j) {
        col.assign(j, 0);
        std::vector<Value> units;
        for (Value u = 0; u < lang.unary_types; ++u) {
            if (extension_in_class(f, a, j, u, col)) units.push_back(u);
        }
        if (units.empty()) throw std::runtime_error("no extension of a member");
        const Value u = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
        order.resize(j);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            col[i] = static_cast<Value>(std::uniform_int_distribution<int>(0, lang.k - 1)(rng));
            if (col[i] != 0 && !extension_in_class(f, a, j, u, col)) col[i] = 0;
        }
        a.append(u, col);
    }
    return a;
}

/// Any table, in K or not; unary values respect unary_types.
inline Structure random_table(const Language& lang, std::size_t n, std::mt19937_64& rng)
{
    Structure a(lang);
    std::vector<Value> col;
    for (std::size_t j = 0; j < n; ++j) {
        col.assign(j, 0);
        for (auto& v : col) v = static_cast<Value>(std::uniform_int_distribution<int>(0, lang.k - 1)(rng));
        a.append(static_cast<Value>(std::uniform_int_distribution<int>(0, lang.unary_types - 1)(rng)), col);
    }
    return a;
}

/// Subsets of [lo, hi] as sorted level sets, enumerated by bitmask.
inline void for_each_subset(std::size_t lo, std::size_t hi, const std::function<void(const LevelSet&)>& body)
{
    const std::size_t w = hi + 1 - lo;
    LevelSet s;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
        s.clear();
        for (std::size_t i = 0; i < w; ++i) {
            if (mask >> i & 1) s.push_back(lo + i);
        }
        body(s);
    }
}

/// Every envelope E with S <= E <= [0, max S].
inline std::vector<LevelSet> envelopes_over(const LevelSet& s, const LimitPrefix& p)
{
    std::vector<LevelSet> out;
    if (s.empty()) return out;
    const std::size_t top = s.back();
    LevelSet free;
    for (std::size_t m = 0; m < top; ++m) {
        if (!std::binary_search(s.begin(), s.end(), m)) free.push_back(m);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        LevelSet e = s;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (mask >> i & 1) e.push_back(free[i]);
        }
        e = normalize_levels(std::move(e));
        if (is_envelope(e, p, EnvelopeMode::Definitional)) out.push_back(e);
    }
    return out;
}

}  // namespace oracle

namespace oracle {

/// Left-most aged embedding of a into a prefix that grows on demand: when no
/// coding node Left(target, r) exists yet, one is appended.
inline AgedEmbedding grow_aged_embedding(const Structure& a, LimitPrefix& prefix, std::size_t budget)
{
    // An empty result means the prefix ran out: the caller appends and retries.
    auto step = [&](auto&& make) {
        try {
            return make();
        } catch (const Error& e) {
            const std::string what = e.what();
            if (e.kind() != ErrorKind::PrefixExhausted || prefix.size() >= budget ||
                what.find("dead branch") != std::string::npos) {
                throw;
            }
            return AgedEmbedding{};
        }
    };
    const int k = a.language().k;
    AgedEmbedding f;
    while (true) {
        f = step([&] { return aged_embedding_base(a, prefix); });
        if (!f.induced.empty() || a.size() == 0) break;
        prefix.append_level(a.unary(0), Node(prefix.size(), 0), prefix.size(), true);
    }
    for (std::size_t m = 1; m < a.size(); ++m) {
        NodePairs gamma;
        for (const Node& fs : f.f.level[m - 1]) {
            for (int i = 0; i < k; ++i) {
                Node x = fs;
                x.push_back(static_cast<Value>(i));
                gamma.emplace_back(x, x);
            }
        }
        while (true) {
            AgedEmbedding g = step([&] { return extend_aged_embedding(f, a, gamma, prefix); });
            if (!g.induced.empty()) {
                f = std::move(g);
                break;
            }
            // The image of c^A(m) under the prime map, padded to the new level.
            Node target = f.f.level[m - 1][node_index(node_restrict(coding_tree_of(a).c[m], m - 1), k)];
            target.push_back(a.rel(m - 1, m));
            prefix.append_level(a.unary(m), target, target.size(), true);
        }
    }
    return f;
}

}  // namespace oracle
