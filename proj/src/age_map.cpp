#include "brd/age_map.hpp"

#include "brd/copy_search.hpp"
#include "brd/error.hpp"

#include <algorithm>
#include <map>

namespace brd {

Structure realize(const Structure& b, const std::vector<Node>& labels, const Structure& context)
{
    if (labels.size() != b.size()) {
        throw Error(ErrorKind::LevelMismatch, "one label per point of B is required");
    }
    const std::size_t m = labels.empty() ? context.size() : labels.front().size();
    for (const Node& l : labels) {
        if (l.size() != m) throw Error(ErrorKind::LevelMismatch, "labels lie on different levels");
    }
    if (m > context.size()) {
        throw Error(ErrorKind::LevelMismatch, "label level " + std::to_string(m) + " above the context");
    }
    if (b.language() != context.language()) {
        throw Error(ErrorKind::LanguageMismatch, "B and the context use different languages");
    }
    Structure out = initial_segment(context, m);
    std::vector<Value> column;
    for (std::size_t x = 0; x < b.size(); ++x) {
        column.assign(labels[x].begin(), labels[x].end());
        for (std::size_t y = 0; y < x; ++y) column.push_back(b.rel(y, x));
        out.append(b.unary(x), column);
    }
    return out;
}

bool in_class(const ForbFamily& family, const Structure& b, const std::vector<Node>& labels, const Structure& context)
{
    return contains(family, realize(b, labels, context));
}

namespace {

struct RealizationHost {
    const Structure& context;
    std::size_t m;
    const Structure& b;
    const std::vector<const Node*>& labels;

    Value unary(std::size_t x) const { return x < m ? context.unary(x) : b.unary(x - m); }
    Value rel(std::size_t x, std::size_t y) const
    {
        if (x < m && y < m) return context.rel(x, y);
        if (x < m) return (*labels[y - m])[x];
        if (y < m) return context.language().flip_of((*labels[x - m])[y]);
        return b.rel(x - m, y - m);
    }
};

// Membership of B[phi, A] when A_m and B both lie in K: every forbidden copy
// then meets B, so anchoring at B's points suffices.
bool realization_in_class(const ForbFamily& family, const Structure& context, std::size_t m, const Structure& b,
                          const std::vector<const Node*>& labels, const std::vector<const std::vector<std::size_t>*>& supports,
                          std::vector<std::size_t>& pool)
{
    RealizationHost host{context, m, b, labels};
    for (std::size_t x = 0; x < b.size(); ++x) {
        pool.assign(supports[x]->begin(), supports[x]->end());
        for (std::size_t y = 0; y < b.size(); ++y) {
            if (y != x && b.rel(x, y) != 0) pool.push_back(m + y);
        }
        for (const Structure& f : family.forbidden()) {
            if (detail::has_copy_through(f, host, m + x, pool)) return false;
        }
    }
    return true;
}

struct SideData {
    const Structure* context;
    std::size_t level;
    std::vector<std::vector<std::size_t>> supports;
};

SideData prepare(const AgedSide& side, const char* name)
{
    if (side.context == nullptr) {
        throw Error(ErrorKind::LevelMismatch, std::string(name) + " side has no context");
    }
    SideData d{side.context, side.nodes.empty() ? 0 : side.nodes.front().size(), {}};
    for (const Node& t : side.nodes) {
        if (t.size() != d.level) {
            throw Error(ErrorKind::LevelMismatch, std::string(name) + " nodes lie on different levels");
        }
        std::vector<std::size_t> sup;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] != 0) sup.push_back(i);
        }
        d.supports.push_back(std::move(sup));
    }
    if (d.level > side.context->size()) {
        throw Error(ErrorKind::LevelMismatch, std::string(name) + " level " + std::to_string(d.level) +
                                                  " above its context of size " + std::to_string(side.context->size()));
    }
    return d;
}

std::optional<AgeMapVerdict> precheck(const AgedSide& source, const AgedSide& target)
{
    if (source.nodes.size() != target.nodes.size()) {
        throw Error(ErrorKind::LevelMismatch, "map must list one image per source node");
    }
    std::vector<Node> s = source.nodes;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw Error(ErrorKind::LevelMismatch, "source carrier lists a node twice");
    }
    std::vector<Node> t = target.nodes;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
        AgeMapVerdict v;
        v.is_age_map = false;
        v.reason = "not injective";
        return v;
    }
    return std::nullopt;
}

// Advances an index tuple over base^d lexicographically; false once wrapped.
bool next_tuple(std::vector<std::size_t>& tuple, std::size_t base)
{
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < base) return true;
        tuple[i] = 0;
    }
    return false;
}

}  // namespace

AgeMapVerdict check_age_map(const ForbFamily& family, const AgedSide& source, const AgedSide& target, int max_b)
{
    if (auto early = precheck(source, target)) return *early;
    const SideData src = prepare(source, "source");
    const SideData tgt = prepare(target, "target");
    AgeMapVerdict verdict;
    if (family.forbidden().empty() || source.nodes.empty()) return verdict;

    const std::size_t limit =
        max_b < 0 ? family.max_forbidden_size() - 1 : static_cast<std::size_t>(max_b);
    const std::size_t x_count = source.nodes.size();
    std::vector<const Node*> src_labels, tgt_labels;
    std::vector<const std::vector<std::size_t>*> src_sup, tgt_sup;
    std::vector<std::size_t> pool;

    for (std::size_t d = 1; d <= limit; ++d) {
        for (const Structure& b : family.members(d)) {
            std::vector<std::size_t> phi(d, 0);
            do {
                src_labels.clear();
                tgt_labels.clear();
                src_sup.clear();
                tgt_sup.clear();
                for (std::size_t i : phi) {
                    src_labels.push_back(&source.nodes[i]);
                    tgt_labels.push_back(&target.nodes[i]);
                    src_sup.push_back(&src.supports[i]);
                    tgt_sup.push_back(&tgt.supports[i]);
                }
                const bool in_src =
                    realization_in_class(family, *src.context, src.level, b, src_labels, src_sup, pool);
                const bool in_tgt =
                    realization_in_class(family, *tgt.context, tgt.level, b, tgt_labels, tgt_sup, pool);
                ++verdict.checked;
                if (in_src != in_tgt) {
                    verdict.is_age_map = false;
                    verdict.reason = in_src ? "realization leaves K on the target side only"
                                            : "realization leaves K on the source side only";
                    verdict.source_in = in_src;
                    verdict.target_in = in_tgt;
                    LabeledStructure w{b, {}};
                    for (std::size_t i : phi) w.labels.push_back(source.nodes[i]);
                    verdict.witness = std::move(w);
                    return verdict;
                }
            } while (next_tuple(phi, x_count));
        }
    }
    return verdict;
}

AgeMapVerdict check_age_map_bruteforce(const ForbFamily& family, const AgedSide& source, const AgedSide& target,
                                       int max_b)
{
    if (auto early = precheck(source, target)) return *early;
    prepare(source, "source");
    prepare(target, "target");
    AgeMapVerdict verdict;
    if (source.nodes.empty()) return verdict;
    const Language& lang = family.language();
    const std::size_t x_count = source.nodes.size();

    for (int d = 1; d <= max_b; ++d) {
        const std::size_t n = static_cast<std::size_t>(d);
        const std::size_t pairs = n * (n - 1) / 2;
        std::vector<std::size_t> table(n + pairs, 0);
        do {
            bool unary_ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                unary_ok = unary_ok && table[i] < static_cast<std::size_t>(lang.unary_types);
            }
            if (!unary_ok) continue;
            Structure b(lang);
            std::size_t pos = n;
            std::vector<Value> column;
            for (std::size_t j = 0; j < n; ++j) {
                column.assign(j, 0);
                for (std::size_t i = 0; i < j; ++i) column[i] = static_cast<Value>(table[pos++]);
                b.append(static_cast<Value>(table[j]), column);
            }
            std::vector<std::size_t> phi(n, 0);
            do {
                std::vector<Node> sl, tl;
                for (std::size_t i : phi) {
                    sl.push_back(source.nodes[i]);
                    tl.push_back(target.nodes[i]);
                }
                const bool in_src = in_class(family, b, sl, *source.context);
                const bool in_tgt = in_class(family, b, tl, *target.context);
                ++verdict.checked;
                if (in_src != in_tgt) {
                    verdict.is_age_map = false;
                    verdict.reason = "realizations disagree";
                    verdict.source_in = in_src;
                    verdict.target_in = in_tgt;
                    verdict.witness = LabeledStructure{b, sl};
                    return verdict;
                }
            } while (next_tuple(phi, x_count));
        } while (next_tuple(table, static_cast<std::size_t>(lang.k)));
    }
    return verdict;
}

NodePairs prime_map(const NodePairs& f, int k)
{
    NodePairs out;
    out.reserve(f.size() * static_cast<std::size_t>(k));
    for (const auto& [s, fs] : f) {
        for (int i = 0; i < k; ++i) {
            Node a = s, b = fs;
            a.push_back(static_cast<Value>(i));
            b.push_back(static_cast<Value>(i));
            out.emplace_back(std::move(a), std::move(b));
        }
    }
    return out;
}

NodePairs extend_age_map_left(const NodePairs& gamma, std::size_t m, std::size_t n, int k)
{
    std::map<Node, Node> defined;
    for (const auto& [s, gs] : gamma) {
        if (s.size() != m || gs.size() != n) {
            throw Error(ErrorKind::LevelMismatch, "gamma must map T(m) into T(n)");
        }
        if (!node_below(s, gs)) {
            throw Error(ErrorKind::ExtensionNotAboveSource,
                        "gamma('" + node_to_string(s) + "') does not extend '" + node_to_string(s) + "'");
        }
        defined[s] = gs;
    }
    NodePairs out;
    const std::size_t width = level_width(k, m);
    for (std::size_t idx = 0; idx < width; ++idx) {
        Node t = node_at(idx, m, k);
        auto it = defined.find(t);
        Node img = it != defined.end() ? it->second : node_left(t, n);
        out.emplace_back(std::move(t), std::move(img));
    }
    return out;
}

}  // namespace brd
