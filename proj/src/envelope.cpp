#include "brd/envelope.hpp"

#include "brd/error.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace brd {

LevelSet normalize_levels(std::vector<std::size_t> levels)
{
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return levels;
}

LevelSet CritReport::crit() const
{
    LevelSet out = sp;
    for (const AgeChange& a : ac) out.push_back(a.level);
    return normalize_levels(std::move(out));
}

namespace {

void require_levels(const LevelSet& s, const LimitPrefix& prefix)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= prefix.size()) {
            throw Error(ErrorKind::IndexOutOfRange, "level " + std::to_string(s[i]) + " beyond the prefix");
        }
        if (i > 0 && s[i] <= s[i - 1]) {
            throw Error(ErrorKind::IndexOutOfRange, "levels must be strictly increasing");
        }
    }
}

// pi_m on the restrictions c(a)|_{m+1} of the given levels a > m.
PiResult pi_on(const std::vector<std::size_t>& above, std::size_t m, const LimitPrefix& prefix)
{
    PiResult out;
    std::vector<Node> x;
    for (std::size_t a : above) {
        if (a <= m) continue;
        Node t = node_restrict(prefix.c(a), m + 1);
        if (std::find(x.begin(), x.end(), t) == x.end()) x.push_back(std::move(t));
    }
    std::sort(x.begin(), x.end());
    std::vector<Node> y;
    y.reserve(x.size());
    for (const Node& t : x) y.push_back(node_restrict(t, m));
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] == y[i - 1]) {
            out.injective = false;
            out.verdict.is_age_map = false;
            out.verdict.reason = "not injective";
            return out;
        }
    }
    const Structure& k_struct = prefix.structure();
    out.verdict = check_age_map(prefix.family(), AgedSide{&k_struct, x}, AgedSide{&k_struct, y});
    return out;
}

std::size_t meet_level(const LimitPrefix& prefix, std::size_t a, std::size_t b)
{
    return node_meet(prefix.c(a), prefix.c(b)).size();
}

}  // namespace

PiResult pi_map(const LevelSet& s, std::size_t m, const LimitPrefix& prefix)
{
    require_levels(s, prefix);
    return pi_on(s, m, prefix);
}

CritReport crit(const LevelSet& s, const LimitPrefix& prefix)
{
    require_levels(s, prefix);
    CritReport report;
    report.levels = s;
    if (s.empty()) return report;
    for (std::size_t m = 0; m < s.back(); ++m) {
        PiResult pi = pi_on(s, m, prefix);
        if (!pi.injective) report.sp.push_back(m);
        else if (!pi.verdict.is_age_map) report.ac.push_back({m, std::move(pi.verdict)});
    }
    for (std::size_t a : s) report.start.push_back(leading_zeros(prefix.c(a)));
    return report;
}

namespace {

EnvelopeVerdict combinatorial(const LevelSet& s, const LimitPrefix& prefix)
{
    EnvelopeVerdict v;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const std::size_t l = meet_level(prefix, s[i], s[j]);
            if (!std::binary_search(s.begin(), s.end(), l)) {
                v.reason = "meet of c(" + std::to_string(s[i]) + ") and c(" + std::to_string(s[j]) +
                           ") lies at level " + std::to_string(l) + " outside the set";
                return v;
            }
        }
    }
    if (!s.empty()) {
        for (std::size_t m = 0; m < s.back(); ++m) {
            if (std::binary_search(s.begin(), s.end(), m)) continue;
            PiResult pi = pi_on(s, m, prefix);
            if (!pi.verdict.is_age_map) {
                v.reason = "pi_" + std::to_string(m) + " is not an age map (" + pi.verdict.reason + ")";
                return v;
            }
        }
    }
    v.is_envelope = true;
    return v;
}

// The map of the characterization proof: f(empty) = c(s_0), and each f(s)^i
// at level s_j + 1 goes to the unique chosen coding node restriction above it
// at level s_{j+1}, or to its Left extension when there is none.
TreeMap construct_map(const LevelSet& s, const LimitPrefix& prefix)
{
    const int k = prefix.family().language().k;
    TreeMap f;
    f.k = k;
    if (s.empty()) return f;
    f.level.push_back({prefix.c(s[0])});
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        const std::size_t lo = s[j] + 1;
        const std::size_t hi = s[j + 1];
        std::map<Node, Node> above;
        for (std::size_t a : s) {
            if (a < hi) continue;
            const Node full = prefix.c(a);
            above.emplace(node_restrict(full, lo), node_restrict(full, hi));
        }
        std::vector<Node> level;
        level.reserve(f.level[j].size() * static_cast<std::size_t>(k));
        for (const Node& fs : f.level[j]) {
            for (int i = 0; i < k; ++i) {
                Node x = fs;
                x.push_back(static_cast<Value>(i));
                auto it = above.find(x);
                level.push_back(it != above.end() ? it->second : node_left(x, hi));
            }
        }
        f.level.push_back(std::move(level));
    }
    return f;
}

EnvelopeVerdict definitional(const LevelSet& s, const LimitPrefix& prefix)
{
    EnvelopeVerdict v;
    TreeMap f = construct_map(s, prefix);
    const Structure ks = induced_substructure(prefix.structure(), s);
    AgedCheck check = check_aged_embedding(f, ks, prefix.structure(), prefix.family());
    v.construction = std::move(f);
    if (!check.ok) {
        v.reason = "constructed map fails: " + check.failure;
        return v;
    }
    if (check.induced != s) {
        v.reason = "constructed map induces levels other than the set";
        return v;
    }
    v.is_envelope = true;
    return v;
}

}  // namespace

EnvelopeVerdict check_envelope(const LevelSet& s, const LimitPrefix& prefix, EnvelopeMode mode)
{
    require_levels(s, prefix);
    return mode == EnvelopeMode::Combinatorial ? combinatorial(s, prefix) : definitional(s, prefix);
}

bool is_envelope(const LevelSet& s, const LimitPrefix& prefix, EnvelopeMode mode)
{
    return check_envelope(s, prefix, mode).is_envelope;
}

LevelSet closure(const LevelSet& s, const LimitPrefix& prefix)
{
    require_levels(s, prefix);
    if (s.empty()) return {};
    std::vector<std::size_t> current{s.back()};
    for (std::size_t m = s.back(); m-- > 0;) {
        bool add = std::binary_search(s.begin(), s.end(), m);
        if (!add) add = !pi_on(current, m, prefix).verdict.is_age_map;
        if (add) current.push_back(m);
    }
    return normalize_levels(std::move(current));
}

std::vector<std::size_t> interior(const LevelSet& e, const LimitPrefix& prefix)
{
    EnvelopeVerdict v = check_envelope(e, prefix, EnvelopeMode::Combinatorial);
    if (!v.is_envelope) {
        throw Error(ErrorKind::NotAnEnvelope, "interior needs an envelope: " + v.reason);
    }
    std::vector<std::size_t> order;
    if (e.empty()) return order;
    order.push_back(e.back());
    while (true) {
        const LevelSet c = closure(normalize_levels(order), prefix);
        if (c == e) break;
        LevelSet rest;
        std::set_difference(e.begin(), e.end(), c.begin(), c.end(), std::back_inserter(rest));
        if (rest.empty()) {
            throw Error(ErrorKind::NotAnEnvelope, "closure of the interior escapes the envelope");
        }
        order.push_back(rest.back());
    }
    return order;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

}  // namespace

std::uint64_t crit_bound(std::size_t s, const ForbFamily& family)
{
    if (s == 0) return 0;
    const auto k = static_cast<std::uint64_t>(family.language().k);
    std::uint64_t total = s - 1;
    for (const Structure& irr : irr_structures(family)) {
        std::uint64_t t = 1;
        for (std::size_t i = 0; i < irr.size(); ++i) t = sat_mul(t, k);
        std::uint64_t power = 1;
        for (std::size_t j = 0; j < s; ++j) {
            power = sat_mul(power, t);
            total = sat_add(total, power);
        }
    }
    return total;
}

std::uint64_t envelope_size_bound(std::size_t n, const ForbFamily& family)
{
    if (n == 0) return 0;
    if (family.forbidden().empty()) return 2 * static_cast<std::uint64_t>(n) - 1;
    const std::uint64_t per = sat_add(crit_bound(n, family), n);
    return sat_add(n, sat_mul(per, family.max_forbidden_size()));
}

}  // namespace brd
