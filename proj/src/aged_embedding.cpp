#include "brd/aged_embedding.hpp"

#include "brd/error.hpp"

#include <algorithm>
#include <map>

namespace brd {

SelfCheckStats& self_check_stats()
{
    static SelfCheckStats stats;
    return stats;
}

namespace {

std::vector<Node> level_nodes(std::size_t m, int k)
{
    const std::size_t width = level_width(k, m);
    std::vector<Node> out;
    out.reserve(width);
    for (std::size_t idx = 0; idx < width; ++idx) out.push_back(node_at(idx, m, k));
    return out;
}

AgeMapVerdict level_verdict(const std::vector<Node>& images, std::size_t m, const Structure& a,
                            const Structure& ambient, const ForbFamily& family)
{
    AgedSide src{&a, level_nodes(m, a.language().k)};
    AgedSide tgt{&ambient, images};
    return check_age_map(family, src, tgt);
}

Node coding_node(const Structure& s, std::size_t m)
{
    auto col = s.column(m);
    return Node(col.begin(), col.end());
}

void require_member(const Structure& a, const LimitPrefix& prefix)
{
    if (a.language() != prefix.family().language()) {
        throw Error(ErrorKind::LanguageMismatch, "structure language differs from the family's");
    }
    if (auto bad = first_forbidden_copy(prefix.family(), a)) {
        throw Error(ErrorKind::NotInClass, "structure embeds forbidden[" + std::to_string(*bad) + "]");
    }
}

}  // namespace

AgedCheck check_aged_embedding(const TreeMap& f, const Structure& a, const Structure& ambient,
                               const ForbFamily& family)
{
    AgedCheck out;
    EmbeddingCheck emb = check_embedding(f, a, ambient);
    if (!emb.ok) {
        out.clause = emb.clause;
        out.failure = emb.failure;
        return out;
    }
    for (std::size_t m = 0; m < a.size(); ++m) {
        AgeMapVerdict v = level_verdict(f.level[m], m, a, ambient, family);
        if (!v.is_age_map) {
            out.clause = 6;
            out.level = m;
            out.failure = "level " + std::to_string(m) + " map is not an age map: " + v.reason;
            out.verdict = std::move(v);
            return out;
        }
    }
    out.ok = true;
    out.induced = std::move(emb.induced);
    return out;
}

AgedEmbedding aged_embedding_base(const Structure& a, const LimitPrefix& prefix)
{
    AgedEmbedding out;
    out.f.k = a.language().k;
    if (a.size() == 0) return out;
    const Value u = a.unary(0);
    auto l = prefix.find_left(u, Node{}, 0);
    if (!l) {
        throw Error(ErrorKind::PrefixExhausted, "no all-zero coding node of unary type " + std::to_string(u));
    }
    out.f.level.push_back({prefix.c(*l)});
    out.induced.push_back(*l);
    return out;
}

AgedEmbedding extend_aged_embedding(const AgedEmbedding& f, const Structure& a, const NodePairs& gamma,
                                    const LimitPrefix& prefix)
{
    const std::size_t m = f.f.depth();
    const int k = a.language().k;
    if (m == 0) return aged_embedding_base(a, prefix);
    if (m >= a.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "aged embedding already covers the structure");
    }
    const Structure& ambient = prefix.structure();
    const ForbFamily& family = prefix.family();
    SelfCheckStats& stats = self_check_stats();

    // f' on T(m), and its image under gamma.
    std::vector<Node> primed;
    primed.reserve(level_width(k, m));
    for (const Node& fs : f.f.level[m - 1]) {
        for (int i = 0; i < k; ++i) {
            Node x = fs;
            x.push_back(static_cast<Value>(i));
            primed.push_back(std::move(x));
        }
    }

    ++stats.prime_checks;
    if (!level_verdict(primed, m, a, ambient, family).is_age_map) {
        ++stats.prime_failures;
        throw Error(ErrorKind::SelfCheckFailure, "prime map of level " + std::to_string(m - 1) + " is not an age map");
    }

    std::map<Node, Node> g;
    std::size_t n = 0;
    for (const auto& [x, y] : gamma) {
        if (!node_below(x, y)) {
            throw Error(ErrorKind::ExtensionNotAboveSource, "gamma('" + node_to_string(x) + "') is not above it");
        }
        if (!g.empty() && y.size() != n) {
            throw Error(ErrorKind::LevelMismatch, "gamma must land on one level");
        }
        n = y.size();
        g[x] = y;
    }
    std::vector<Node> lifted;
    lifted.reserve(primed.size());
    for (const Node& x : primed) {
        auto it = g.find(x);
        if (it == g.end()) {
            throw Error(ErrorKind::DomainIncomplete, "gamma undefined at '" + node_to_string(x) + "'");
        }
        lifted.push_back(it->second);
    }

    const Node target = lifted[node_index(coding_node(a, m), k)];
    const Value u = a.unary(m);
    if (!extension_in_class(family, ambient, n, u, target)) {
        throw Error(ErrorKind::PrefixExhausted, "node '" + node_to_string(target) +
                                                    "' lies on a dead branch: no coding node of type " +
                                                    std::to_string(u) + " extends it");
    }
    auto r = prefix.find_left(u, target, n);
    if (!r) {
        throw Error(ErrorKind::PrefixExhausted, "no coding node Left('" + node_to_string(target) +
                                                    "', r) within the prefix");
    }

    AgedEmbedding out = f;
    std::vector<Node> level;
    level.reserve(lifted.size());
    for (const Node& y : lifted) level.push_back(node_left(y, *r));

    ++stats.extend_checks;
    if (!level_verdict(level, m, a, ambient, family).is_age_map) {
        ++stats.extend_failures;
        throw Error(ErrorKind::SelfCheckFailure, "extended level " + std::to_string(m) + " is not an age map");
    }
    out.f.level.push_back(std::move(level));
    out.induced.push_back(*r);
    return out;
}

AgedEmbedding find_aged_embedding(const Structure& a, const LimitPrefix& prefix)
{
    require_member(a, prefix);
    const int k = a.language().k;
    AgedEmbedding f = aged_embedding_base(a, prefix);
    for (std::size_t m = 1; m < a.size(); ++m) {
        NodePairs gamma;
        for (const Node& fs : f.f.level[m - 1]) {
            for (int i = 0; i < k; ++i) {
                Node x = fs;
                x.push_back(static_cast<Value>(i));
                gamma.emplace_back(x, x);
            }
        }
        f = extend_aged_embedding(f, a, gamma, prefix);
    }
    return f;
}

namespace {

struct Enumerator {
    const Structure& a;
    const LimitPrefix& prefix;
    std::size_t max_level;
    std::size_t cap;
    int k;
    AgedEnumeration result;
    AgedEmbedding current;

    bool full() const { return result.list.size() >= cap; }

    void emit()
    {
        if (full()) {
            result.capped = true;
            return;
        }
        result.list.push_back(current);
    }

    // Picks images for the nodes of level m one at a time (index idx),
    // each extending f(t|m-1)^t(m-1) up to level r.
    void fill(std::size_t m, std::size_t r, std::size_t idx, std::vector<Node>& level)
    {
        if (result.capped) return;
        const std::size_t width = level_width(k, m);
        if (idx == width) {
            if (!level_verdict(level, m, a, prefix.structure(), prefix.family()).is_age_map) return;
            current.f.level.push_back(level);
            current.induced.push_back(r);
            descend(m + 1);
            current.f.level.pop_back();
            current.induced.pop_back();
            return;
        }
        Node base = current.f.level[m - 1][idx / static_cast<std::size_t>(k)];
        base.push_back(static_cast<Value>(idx % static_cast<std::size_t>(k)));
        const Node cm = prefix.c(r);
        if (idx == node_index(coding_node(a, m), k)) {
            if (!node_below(base, cm)) return;
            level.push_back(cm);
            fill(m, r, idx + 1, level);
            level.pop_back();
            return;
        }
        for (Node& img : successors(base, r, k)) {
            level.push_back(std::move(img));
            fill(m, r, idx + 1, level);
            level.pop_back();
            if (result.capped) return;
        }
    }

    void descend(std::size_t m)
    {
        if (result.capped) return;
        if (m == a.size()) {
            emit();
            return;
        }
        const std::size_t lo = m == 0 ? 0 : current.induced.back() + 1;
        const std::size_t hi = std::min(max_level, prefix.size() - 1);
        for (std::size_t r = lo; r <= hi && !result.capped; ++r) {
            if (prefix.u(r) != a.unary(m)) continue;
            if (m == 0) {
                std::vector<Node> level{prefix.c(r)};
                if (!level_verdict(level, 0, a, prefix.structure(), prefix.family()).is_age_map) continue;
                current.f.level.push_back(level);
                current.induced.push_back(r);
                descend(1);
                current.f.level.pop_back();
                current.induced.pop_back();
                continue;
            }
            std::vector<Node> level;
            fill(m, r, 0, level);
        }
    }
};

}  // namespace

AgedEnumeration enumerate_aged_embeddings(const Structure& a, const LimitPrefix& prefix, std::size_t max_level,
                                          std::size_t cap)
{
    Enumerator e{a, prefix, max_level, cap, a.language().k, {}, {}};
    e.current.f.k = e.k;
    if (cap == 0) {
        e.result.capped = true;
        return e.result;
    }
    if (prefix.size() == 0 && a.size() > 0) return e.result;
    e.descend(0);
    std::sort(e.result.list.begin(), e.result.list.end(), [](const AgedEmbedding& x, const AgedEmbedding& y) {
        if (x.induced != y.induced) return x.induced < y.induced;
        return x.f.level < y.f.level;
    });
    return e.result;
}

}  // namespace brd
