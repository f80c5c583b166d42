#include "brd/degrees.hpp"

#include "brd/error.hpp"
#include "brd/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace brd {

std::vector<std::uint64_t> census(const ForbFamily& family, std::size_t max_d, std::size_t cap)
{
    std::vector<std::uint64_t> counts;
    std::uint64_t previous = 1;  // the empty structure
    for (std::size_t d = 1; d <= max_d; ++d) {
        if (previous > cap) {
            throw Error(ErrorKind::CensusTooLarge, "census at size " + std::to_string(d - 1) + " already has " +
                                                       std::to_string(previous) + " members (cap " +
                                                       std::to_string(cap) + ")");
        }
        std::uint64_t count = 0;
        for (const Structure& b : family.members(d - 1)) count += valid_extensions(family, b).size();
        counts.push_back(count);
        previous = count;
    }
    return counts;
}

std::vector<std::uint64_t> census_oracle(const ForbFamily& family, std::size_t max_d)
{
    const Language& lang = family.language();
    std::vector<std::uint64_t> counts;
    for (std::size_t d = 1; d <= max_d; ++d) {
        const std::size_t pairs = d * (d - 1) / 2;
        std::vector<std::size_t> digits(d + pairs, 0);
        std::uint64_t count = 0;
        while (true) {
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) ok = ok && digits[i] < static_cast<std::size_t>(lang.unary_types);
            if (ok) {
                std::vector<Value> unary(d);
                for (std::size_t i = 0; i < d; ++i) unary[i] = static_cast<Value>(digits[i]);
                std::vector<RelEntry> rel;
                std::size_t pos = d;
                for (std::size_t j = 0; j < d; ++j) {
                    for (std::size_t i = 0; i < j; ++i) {
                        const auto v = static_cast<Value>(digits[pos++]);
                        if (v != 0) rel.push_back({i, j, v});
                    }
                }
                if (contains(family, validate_structure(lang, unary, rel))) ++count;
            }
            std::size_t i = digits.size();
            while (i > 0 && ++digits[i - 1] == static_cast<std::size_t>(lang.k)) digits[--i] = 0;
            if (i == 0) break;
        }
        counts.push_back(count);
    }
    return counts;
}

DegreeBoundReport degree_bound(const Structure& a, const ForbFamily& family, std::optional<std::uint64_t> d,
                               std::size_t cap)
{
    if (auto bad = first_forbidden_copy(family, a)) {
        throw Error(ErrorKind::NotInClass, "structure embeds forbidden[" + std::to_string(*bad) + "]");
    }
    DegreeBoundReport report;
    report.d = d ? *d : envelope_size_bound(a.size(), family);
    report.census = census(family, static_cast<std::size_t>(report.d), cap);
    report.ell = std::accumulate(report.census.begin(), report.census.end(), std::uint64_t{0});
    return report;
}

std::vector<OrderedVariant> ordered_decomposition(const Structure& a)
{
    const std::size_t n = a.size();
    std::vector<OrderedVariant> out;
    std::map<std::vector<Value>, std::size_t> seen;
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        Structure t(a.language());
        std::vector<Value> column;
        for (std::size_t j = 0; j < n; ++j) {
            column.resize(j);
            for (std::size_t i = 0; i < j; ++i) column[i] = a.rel(sigma[i], sigma[j]);
            t.append(a.unary(sigma[j]), column);
        }
        auto key = table_key(t);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), out.size());
            out.push_back({std::move(t), {sigma}});
        } else {
            out[it->second].sigmas.push_back(sigma);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

PartitionCheck check_partition(const Structure& a, const std::vector<OrderedVariant>& variants, const Structure& host)
{
    PartitionCheck out;
    std::map<std::vector<std::size_t>, std::size_t> hits;
    for (const StructMap& e : enumerate_embeddings(a, host, false)) hits.emplace(e.values, 0);
    out.embeddings = hits.size();
    for (const OrderedVariant& v : variants) {
        const auto ordered = enumerate_embeddings(v.table, host, true);
        std::size_t reached = 0;
        for (const auto& sigma : v.sigmas) {
            for (const StructMap& g : ordered) {
                // e = g . sigma^{-1}: e(sigma(i)) = g(i)
                std::vector<std::size_t> e(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) e[sigma[i]] = g.values[i];
                ++out.decomposed;
                ++reached;
                auto it = hits.find(e);
                if (it == hits.end()) ++out.uncovered;  // not an embedding at all
                else ++it->second;
            }
        }
        out.per_variant.push_back(reached);
    }
    for (const auto& [e, count] : hits) {
        if (count == 0) ++out.uncovered;
        if (count > 1) ++out.multiply;
    }
    return out;
}

Coloring constant_coloring()
{
    return [](const std::vector<std::size_t>&) { return std::string("0"); };
}

Coloring edge_coloring(const LimitPrefix& prefix)
{
    const LimitPrefix* p = &prefix;
    return [p](const std::vector<std::size_t>& v) {
        if (v.size() < 2) return std::string("0");
        return std::string(p->structure().rel(v[0], v[1]) != 0 ? "1" : "0");
    };
}

Coloring canonical_coloring(const LimitPrefix& prefix)
{
    const LimitPrefix* p = &prefix;
    return [p](const std::vector<std::size_t>& v) {
        const LevelSet image = normalize_levels(v);
        const LevelSet c = closure(image, *p);
        auto pos = [&](std::size_t level) {
            return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), level) - c.begin());
        };
        std::string out = std::to_string(c.size()) + ":";
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto role = std::find(v.begin(), v.end(), c[i]);
            out += role == v.end() ? "." : std::to_string(role - v.begin());
            out += "u" + std::to_string(p->u(c[i])) + "[";
            for (std::size_t j = 0; j < i; ++j) out += std::to_string(p->structure().rel(c[j], c[i])) + ",";
            out += "]";
        }
        out += "|m";
        for (std::size_t i = 0; i < image.size(); ++i) {
            for (std::size_t j = i + 1; j < image.size(); ++j) {
                out += std::to_string(pos(node_meet(p->c(image[i]), p->c(image[j])).size())) + ",";
            }
        }
        const CritReport report = crit(image, *p);
        out += "|sp";
        for (std::size_t l : report.sp) out += std::to_string(pos(l)) + ",";
        out += "|ac";
        for (const AgeChange& a : report.ac) out += std::to_string(pos(a.level)) + ",";
        out += "|st";
        for (std::size_t s : report.start) {
            const std::size_t q = pos(s);
            out += std::to_string(q) + (q < c.size() && c[q] == s ? "=" : "<") + ",";
        }
        return out;
    };
}

namespace {

void collect_etas(const Structure& window, const Structure& host, std::size_t budget, std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out, bool& more)
{
    if (more) return;
    const std::size_t i = current.size();
    if (i == window.size()) {
        if (out.size() >= budget) {
            more = true;
            return;
        }
        out.push_back(current);
        return;
    }
    const std::size_t start = i == 0 ? 0 : current.back() + 1;
    for (std::size_t t = start; t < host.size() && !more; ++t) {
        if (window.unary(i) != host.unary(t)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = window.rel(j, i) == host.rel(current[j], t);
        if (!ok) continue;
        current.push_back(t);
        collect_etas(window, host, budget, current, out, more);
        current.pop_back();
    }
}

std::set<std::string> colors_of(const std::vector<StructMap>& inner, const Coloring& chi,
                                const std::vector<std::size_t>& eta)
{
    std::set<std::string> colors;
    std::vector<std::size_t> image;
    for (const StructMap& g : inner) {
        image.clear();
        for (std::size_t x : g.values) image.push_back(eta[x]);
        colors.insert(chi(image));
    }
    return colors;
}

}  // namespace

std::size_t count_colors(const LimitPrefix& prefix, const Structure& a, const Coloring& chi, std::size_t window,
                         const std::vector<std::size_t>& eta)
{
    const Structure w = initial_segment(prefix.structure(), window);
    if (!is_embedding(w, prefix.structure(), eta)) {
        throw Error(ErrorKind::IndexOutOfRange, "eta is not an embedding of the window");
    }
    return colors_of(enumerate_embeddings(a, w, true), chi, eta).size();
}

ColoringExperiment run_coloring_experiment(const LimitPrefix& prefix, const Structure& a, const Coloring& chi,
                                           std::size_t window, std::size_t budget, unsigned jobs)
{
    if (window > prefix.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "window larger than the prefix");
    }
    ColoringExperiment out;
    out.window = window;
    const Structure w = initial_segment(prefix.structure(), window);
    const auto inner = enumerate_embeddings(a, w, true);

    std::vector<std::vector<std::size_t>> etas;
    std::vector<std::size_t> current;
    bool more = false;
    collect_etas(w, prefix.structure(), std::max<std::size_t>(budget, 1), current, etas, more);
    out.budget_exhausted = more;
    out.explored = etas.size();

    std::vector<std::set<std::string>> results(etas.size());
    parallel_for(etas.size(), jobs, [&](std::size_t i) { results[i] = colors_of(inner, chi, etas[i]); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].size() < results[best].size()) best = i;
    }
    if (!etas.empty()) {
        out.eta = etas[best];
        out.colors = results[best].size();
        out.palette.assign(results[best].begin(), results[best].end());
    }
    return out;
}

}  // namespace brd
