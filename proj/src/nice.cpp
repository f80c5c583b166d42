#include "brd/nice.hpp"

#include "brd/error.hpp"

#include <algorithm>
#include <map>

namespace brd {

YStructure build_y(const LimitPrefix& prefix, std::size_t horizon)
{
    if (horizon > prefix.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "horizon beyond the prefix");
    }
    const Structure& k_struct = prefix.structure();
    const std::vector<Structure> irr = irr_structures(prefix.family());

    YStructure y;
    y.horizon = horizon;
    y.structure = Structure(k_struct.language());
    y.irr.resize(horizon);
    for (std::size_t a = 0; a < horizon; ++a) {
        const Structure upto = initial_segment(k_struct, a + 1);
        for (std::size_t i = 0; i < irr.size(); ++i) {
            for (StructMap& m : enumerate_embeddings(irr[i], upto, true)) {
                if (m.values.back() != a) continue;
                y.irr[a].push_back({i, irr[i], std::move(m.values)});
            }
        }
    }

    for (std::size_t a = 0; a < horizon; ++a) {
        for (std::size_t r = 0; r < y.irr[a].size(); ++r) {
            for (std::size_t b = 0; b < y.irr[a][r].irr.size(); ++b) y.points.push_back({true, a, r, b});
        }
        y.k_position.push_back(y.points.size());
        y.points.push_back({false, a, 0, 0});
    }

    const Language& lang = k_struct.language();
    // R^Y(p, q) for p listed before q.
    auto rel = [&](const YPoint& p, const YPoint& q) -> Value {
        if (!p.copy && !q.copy) return k_struct.rel(p.a, q.a);
        if (p.copy && q.copy) {
            if (p.a != q.a || p.r != q.r) return 0;
            return y.irr[p.a][p.r].irr.rel(p.b, q.b);
        }
        const YPoint& c = p.copy ? p : q;
        const YPoint& n = p.copy ? q : p;
        if (n.a <= c.a) return 0;
        const Value v = k_struct.rel(y.irr[c.a][c.r].f[c.b], n.a);  // from the copy point to n
        return p.copy ? v : lang.flip_of(v);
    };

    std::vector<Value> column;
    for (std::size_t j = 0; j < y.points.size(); ++j) {
        column.assign(j, 0);
        for (std::size_t i = 0; i < j; ++i) column[i] = rel(y.points[i], y.points[j]);
        const YPoint& p = y.points[j];
        const Value u = p.copy ? y.irr[p.a][p.r].irr.unary(p.b) : k_struct.unary(p.a);
        y.structure.append(u, column);
    }
    return y;
}

NiceEmbedding nice_embedding(const YStructure& y, LimitPrefix& prefix, std::size_t budget)
{
    NiceEmbedding out;
    const Structure& ys = y.structure;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const std::size_t lo = j == 0 ? 0 : out.eta.back() + 1;
        Node w(lo, 0);
        for (std::size_t i = 0; i < j; ++i) w[out.eta[i]] = ys.rel(i, j);
        auto r = prefix.find_left(ys.unary(j), w, lo);
        if (!r) {
            if (prefix.size() >= budget) {
                throw Error(ErrorKind::BudgetExhausted, "nice embedding needs more than " + std::to_string(budget) +
                                                            " levels (placed " + std::to_string(j) + " of " +
                                                            std::to_string(ys.size()) + " points)");
            }
            prefix.append_level(ys.unary(j), w, lo, true);
            r = prefix.size() - 1;
            ++out.demand_levels;
        }
        out.eta.push_back(*r);
    }
    return out;
}

std::vector<std::string> nice_clause_violations(const NiceEmbedding& eta, const LimitPrefix& prefix)
{
    std::vector<std::string> out;
    std::vector<char> in_range(prefix.size(), 0);
    for (std::size_t v : eta.eta) in_range[v] = 1;
    for (std::size_t i = 0; i < eta.eta.size(); ++i) {
        const std::size_t n = eta.eta[i];
        for (std::size_t m = 0; m < n; ++m) {
            if (prefix.structure().rel(m, n) != 0 && !in_range[m]) {
                out.push_back("point " + std::to_string(i) + " at level " + std::to_string(n) + " relates to " +
                              std::to_string(m) + " outside ran(eta)");
            }
        }
    }
    return out;
}

std::vector<std::string> nice_left_violations(const NiceEmbedding& eta, const LimitPrefix& prefix)
{
    std::vector<std::string> out;
    const auto& e = eta.eta;
    for (std::size_t y = 1; y < e.size(); ++y) {
        const Node cn = prefix.c(e[y]);
        for (std::size_t y1 = 1; y1 <= y; ++y1) {
            const std::size_t y0 = y1 - 1;
            const Node low = node_restrict(cn, e[y0] + 1);
            if (node_restrict(cn, e[y1]) != node_left(low, e[y1])) {
                out.push_back("c(" + std::to_string(e[y]) + ") is not Left between levels " + std::to_string(e[y0]) +
                              " and " + std::to_string(e[y1]));
            }
        }
    }
    return out;
}

NiceEnvelope nice_envelope(const LevelSet& s, const NiceEmbedding& eta, const YStructure& y,
                           const LimitPrefix& prefix)
{
    std::map<std::size_t, std::size_t> point_at;  // level -> point index
    for (std::size_t i = 0; i < eta.eta.size(); ++i) point_at[eta.eta[i]] = i;
    for (std::size_t v : s) {
        auto it = point_at.find(v);
        if (it == point_at.end() || y.points[it->second].copy) {
            throw Error(ErrorKind::IndexOutOfRange, "level " + std::to_string(v) + " is not the image of a point of K");
        }
    }

    const CritReport report = crit(s, prefix);
    LevelSet levels = report.crit();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (report.start[i] < s[i]) levels.push_back(report.start[i]);
    }
    levels = normalize_levels(std::move(levels));

    NiceEnvelope out;
    out.resolved_levels = levels;
    std::vector<std::size_t> e(s.begin(), s.end());
    for (std::size_t n : levels) {
        auto it = point_at.find(n);
        if (it == point_at.end() || !y.points[it->second].copy) {
            throw Error(ErrorKind::CritResolutionFailure,
                        "level " + std::to_string(n) + " is not the image of a copy point");
        }
        out.resolutions.push_back({n, it->second});
        const YPoint& p = y.points[it->second];
        for (std::size_t i = 0; i < y.points.size(); ++i) {
            const YPoint& q = y.points[i];
            if (q.copy && q.a == p.a && q.r == p.r) e.push_back(eta.eta[i]);
        }
    }
    out.envelope = normalize_levels(std::move(e));
    return out;
}

}  // namespace brd
