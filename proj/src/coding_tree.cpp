#include "brd/coding_tree.hpp"

#include "brd/error.hpp"

#include <algorithm>

namespace brd {

Node node_meet(const Node& s, const Node& t)
{
    auto [is, it] = std::mismatch(s.begin(), s.end(), t.begin(), t.end());
    return Node(s.begin(), is);
}

Node node_left(const Node& s, std::size_t n)
{
    if (n < s.size()) {
        throw Error(ErrorKind::LevelBelowNode,
                    "Left(s, " + std::to_string(n) + ") below level " + std::to_string(s.size()));
    }
    Node out = s;
    out.resize(n, 0);
    return out;
}

Node node_restrict(const Node& s, std::size_t n)
{
    if (n > s.size()) {
        throw Error(ErrorKind::LevelBelowNode, "restriction above the node's level");
    }
    return Node(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
}

bool node_below(const Node& s, const Node& t)
{
    return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

std::size_t leading_zeros(const Node& s)
{
    std::size_t n = 0;
    while (n < s.size() && s[n] == 0) ++n;
    return n;
}

Node node_support(const Node& s)
{
    std::size_t n = s.size();
    while (n > 0 && s[n - 1] == 0) --n;
    return Node(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
}

std::size_t level_width(int k, std::size_t m, std::size_t cap)
{
    std::size_t w = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (w > cap / static_cast<std::size_t>(k)) {
            throw Error(ErrorKind::CombinatorialExplosion,
                        "k^" + std::to_string(m) + " nodes exceed the cap of " + std::to_string(cap));
        }
        w *= static_cast<std::size_t>(k);
    }
    if (w > cap) {
        throw Error(ErrorKind::CombinatorialExplosion,
                    "k^" + std::to_string(m) + " nodes exceed the cap of " + std::to_string(cap));
    }
    return w;
}

std::vector<Node> successors(const Node& s, std::size_t n, int k, std::size_t cap)
{
    if (n < s.size()) {
        throw Error(ErrorKind::LevelBelowNode, "Succ(s, n) needs n >= level of s");
    }
    const std::size_t extra = n - s.size();
    const std::size_t count = level_width(k, extra, cap);
    std::vector<Node> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Node t = s;
        Node tail = node_at(i, extra, k);
        t.insert(t.end(), tail.begin(), tail.end());
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Node> immediate_successors(const Node& s, int k)
{
    return successors(s, s.size() + 1, k);
}

std::size_t node_index(const Node& s, int k)
{
    std::size_t idx = 0;
    for (Value d : s) idx = idx * static_cast<std::size_t>(k) + d;
    return idx;
}

Node node_at(std::size_t index, std::size_t level, int k)
{
    Node out(level, 0);
    for (std::size_t i = level; i-- > 0;) {
        out[i] = static_cast<Value>(index % static_cast<std::size_t>(k));
        index /= static_cast<std::size_t>(k);
    }
    return out;
}

std::string node_to_string(const Node& s)
{
    static constexpr char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(s.size());
    for (Value d : s) out.push_back(digits[d]);
    return out;
}

Node node_from_string(const std::string& text, int k)
{
    Node out;
    out.reserve(text.size());
    for (char ch : text) {
        int d = -1;
        if (ch >= '0' && ch <= '9') d = ch - '0';
        else if (ch >= 'a' && ch <= 'z') d = ch - 'a' + 10;
        if (d < 0 || d >= k) {
            throw Error(ErrorKind::RangeViolation, "bad digit '" + std::string(1, ch) + "' in node word");
        }
        out.push_back(static_cast<Value>(d));
    }
    return out;
}

CodingTree coding_tree_of(const Structure& a)
{
    CodingTree ct{a.language(), {}, a.unary_values()};
    ct.c.reserve(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        auto col = a.column(j);
        ct.c.emplace_back(col.begin(), col.end());
    }
    return ct;
}

Structure structure_of(const CodingTree& ct)
{
    if (ct.c.size() != ct.u.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "coding tree: c and u differ in length");
    }
    Structure s(ct.lang);
    for (std::size_t j = 0; j < ct.c.size(); ++j) {
        if (ct.c[j].size() != j) {
            throw Error(ErrorKind::LevelMismatch, "c(" + std::to_string(j) + ") is not in T(" + std::to_string(j) + ")");
        }
        s.append(ct.u[j], ct.c[j]);
    }
    return s;
}

EmbeddingCheck check_embedding(const TreeMap& f, const Structure& a, const Structure& ambient, bool coding_clause)
{
    EmbeddingCheck out;
    const int k = a.language().k;
    const std::size_t n = a.size();
    auto fail = [&](int clause, std::string why) {
        out.ok = false;
        out.clause = clause;
        out.failure = std::move(why);
        return out;
    };

    if (f.depth() != n) {
        throw Error(ErrorKind::DomainIncomplete, "node map must be defined on T(<" + std::to_string(n) + ")");
    }
    for (std::size_t m = 0; m < n; ++m) {
        if (f.level[m].size() != level_width(k, m)) {
            throw Error(ErrorKind::DomainIncomplete, "node map misses nodes of level " + std::to_string(m));
        }
    }

    // Clause 2: one image level per source level, strictly increasing.
    std::vector<std::size_t> lv(n);
    for (std::size_t m = 0; m < n; ++m) {
        lv[m] = f.level[m].front().size();
        for (const Node& img : f.level[m]) {
            if (img.size() != lv[m]) return fail(2, "level " + std::to_string(m) + " is sent to several levels");
        }
        if (m > 0 && lv[m] <= lv[m - 1]) return fail(2, "image levels are not increasing");
        if (lv[m] + (coding_clause ? 1 : 0) > ambient.size()) {
            throw Error(ErrorKind::AmbientTooShallow, "image level " + std::to_string(lv[m]) + " beyond the prefix");
        }
    }

    // Clause 1: injectivity (images on distinct levels are distinct already).
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Node> imgs = f.level[m];
        std::sort(imgs.begin(), imgs.end());
        if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) {
            return fail(1, "not injective on level " + std::to_string(m));
        }
    }

    // Clause 4: f(s^i) extends f(s)^i.
    for (std::size_t m = 0; m + 1 < n; ++m) {
        for (std::size_t idx = 0; idx < f.level[m].size(); ++idx) {
            Node prefix = f.level[m][idx];
            prefix.push_back(0);
            for (int i = 0; i < k; ++i) {
                prefix.back() = static_cast<Value>(i);
                const Node& child = f.level[m + 1][idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)];
                if (!node_below(prefix, child)) {
                    return fail(4, "f(s^" + std::to_string(i) + ") does not extend f(s)^" + std::to_string(i) +
                                       " for s = '" + node_to_string(node_at(idx, m, k)) + "'");
                }
            }
        }
    }

    // Clause 3: meets.
    std::vector<std::pair<Node, const Node*>> all;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t idx = 0; idx < f.level[m].size(); ++idx) {
            all.emplace_back(node_at(idx, m, k), &f.level[m][idx]);
        }
    }
    for (std::size_t x = 0; x < all.size(); ++x) {
        for (std::size_t y = x + 1; y < all.size(); ++y) {
            const Node meet = node_meet(all[x].first, all[y].first);
            if (f(meet) != node_meet(*all[x].second, *all[y].second)) {
                return fail(3, "meet of '" + node_to_string(all[x].first) + "' and '" + node_to_string(all[y].first) +
                                   "' not preserved");
            }
        }
    }

    // Clause 5: coding nodes and unary types.
    if (coding_clause) {
        for (std::size_t m = 0; m < n; ++m) {
            auto col = a.column(m);
            const Node cm(col.begin(), col.end());
            auto tcol = ambient.column(lv[m]);
            if (f(cm) != Node(tcol.begin(), tcol.end())) {
                return fail(5, "f(c^A(" + std::to_string(m) + ")) is not the coding node c(" + std::to_string(lv[m]) + ")");
            }
            if (a.unary(m) != ambient.unary(lv[m])) {
                return fail(5, "unary type differs at level " + std::to_string(m));
            }
        }
        if (!is_embedding(a, ambient, lv)) {
            return fail(5, "induced map is not an embedding");
        }
    }

    out.ok = true;
    out.induced = std::move(lv);
    return out;
}

}  // namespace brd
