#include "brd/structure.hpp"

#include "brd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace brd {

Language::Language(int k_, std::vector<Value> flip_, int unary_types_)
    : k(k_), flip(std::move(flip_)), unary_types(unary_types_ < 0 ? k_ : unary_types_)
{
    if (k < 1 || k > 36) {
        throw Error(ErrorKind::RangeViolation, "language needs 1 <= k <= 36, got " + std::to_string(k));
    }
    if (flip.empty()) {
        flip.resize(static_cast<std::size_t>(k));
        std::iota(flip.begin(), flip.end(), Value{0});
    }
    if (flip.size() != static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::RangeViolation, "flip must list k values");
    }
    for (std::size_t i = 0; i < flip.size(); ++i) {
        if (flip[i] >= k || flip[flip[i]] != i) {
            throw Error(ErrorKind::FlipViolation, "flip is not an involution on {0..k-1}");
        }
    }
    if (flip[0] != 0) {
        throw Error(ErrorKind::FlipViolation, "flip(0) must be 0");
    }
    if (unary_types < 1 || unary_types > k) {
        throw Error(ErrorKind::RangeViolation, "unary_types must lie in [1, k]");
    }
}

Language Language::graph()
{
    return Language(2, {0, 1}, 1);
}

Structure::Structure(Language lang) : lang_(std::move(lang)) {}

void Structure::append(Value unary, std::span<const Value> column)
{
    const std::size_t n = size();
    if (column.size() != n) {
        throw Error(ErrorKind::IndexOutOfRange, "appended column must have length " + std::to_string(n));
    }
    if (unary >= lang_.unary_types) {
        throw Error(ErrorKind::RangeViolation, "unary value " + std::to_string(unary) + " out of range");
    }
    for (Value v : column) {
        if (v >= lang_.k) {
            throw Error(ErrorKind::RangeViolation, "relation value " + std::to_string(v) + " out of range");
        }
    }
    unary_.push_back(unary);
    up_.insert(up_.end(), column.begin(), column.end());
    for (Value v : column) down_.push_back(lang_.flip_of(v));
}

bool Structure::operator==(const Structure& other) const
{
    return lang_ == other.lang_ && unary_ == other.unary_ && up_ == other.up_ && down_ == other.down_;
}

Structure validate_structure(const Language& lang, const std::vector<Value>& unary,
                             const std::vector<RelEntry>& rel)
{
    const std::size_t n = unary.size();
    std::vector<std::string> problems;
    ErrorKind first = ErrorKind::RangeViolation;
    auto report = [&](ErrorKind kind, std::string msg) {
        if (problems.empty()) first = kind;
        problems.push_back(std::move(msg));
    };

    for (std::size_t a = 0; a < n; ++a) {
        if (unary[a] >= lang.unary_types) {
            report(ErrorKind::RangeViolation, "RangeViolation: unary(" + std::to_string(a) + ") = " +
                                                  std::to_string(unary[a]));
        }
    }

    std::map<std::pair<std::size_t, std::size_t>, Value> table;
    for (const RelEntry& e : rel) {
        if (e.a >= n || e.b >= n) {
            report(ErrorKind::IndexOutOfRange, "IndexOutOfRange: pair (" + std::to_string(e.a) + "," +
                                                   std::to_string(e.b) + ")");
            continue;
        }
        if (e.a == e.b) {
            report(ErrorKind::RangeViolation, "RangeViolation: diagonal entry at " + std::to_string(e.a));
            continue;
        }
        if (e.value >= lang.k) {
            report(ErrorKind::RangeViolation, "RangeViolation: rel(" + std::to_string(e.a) + "," +
                                                  std::to_string(e.b) + ") = " + std::to_string(e.value));
            continue;
        }
        auto [it, inserted] = table.emplace(std::make_pair(e.a, e.b), e.value);
        if (!inserted && it->second != e.value) {
            report(ErrorKind::RangeViolation, "RangeViolation: conflicting entries for (" +
                                                  std::to_string(e.a) + "," + std::to_string(e.b) + ")");
        }
    }

    std::vector<Value> full(n * n, 0);
    for (const auto& [key, v] : table) full[key.first * n + key.second] = v;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const bool has_ab = table.count({a, b}) != 0;
            const bool has_ba = table.count({b, a}) != 0;
            if (has_ab && has_ba) {
                if (full[a * n + b] != lang.flip_of(full[b * n + a])) {
                    report(ErrorKind::FlipViolation,
                           "FlipViolation(" + std::to_string(a) + "," + std::to_string(b) + ")");
                }
            } else if (has_ab) {
                full[b * n + a] = lang.flip_of(full[a * n + b]);
            } else if (has_ba) {
                full[a * n + b] = lang.flip_of(full[b * n + a]);
            }
        }
    }

    if (!problems.empty()) {
        std::string msg;
        for (const auto& p : problems) {
            if (!msg.empty()) msg += "; ";
            msg += p;
        }
        throw Error(first, msg);
    }

    Structure s(lang);
    std::vector<Value> column;
    for (std::size_t j = 0; j < n; ++j) {
        column.assign(j, 0);
        for (std::size_t i = 0; i < j; ++i) column[i] = full[i * n + j];
        s.append(unary[j], column);
    }
    return s;
}

Structure make_graph(const Language& lang, std::size_t n,
                     const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    std::vector<RelEntry> rel;
    for (auto [a, b] : edges) rel.push_back({a, b, 1});
    return validate_structure(lang, std::vector<Value>(n, 0), rel);
}

Structure induced_substructure(const Structure& a, std::span<const std::size_t> indices)
{
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorKind::IndexOutOfRange, "induced_substructure: repeated index");
    }
    Structure out(a.language());
    std::vector<Value> column;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        if (sorted[j] >= a.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "induced_substructure: index " + std::to_string(sorted[j]) + " >= " +
                            std::to_string(a.size()));
        }
        column.resize(j);
        for (std::size_t i = 0; i < j; ++i) column[i] = a.rel(sorted[i], sorted[j]);
        out.append(a.unary(sorted[j]), column);
    }
    return out;
}

Structure initial_segment(const Structure& a, std::size_t m)
{
    if (m > a.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "initial_segment beyond structure size");
    }
    Structure out(a.language());
    for (std::size_t j = 0; j < m; ++j) out.append(a.unary(j), a.column(j));
    return out;
}

bool is_embedding(const Structure& source, const Structure& target, std::span<const std::size_t> values)
{
    if (values.size() != source.size()) return false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= target.size()) return false;
        if (source.unary(i) != target.unary(values[i])) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (values[i] == values[j]) return false;
            if (source.rel(j, i) != target.rel(values[j], values[i])) return false;
            if (source.rel(i, j) != target.rel(values[i], values[j])) return false;
        }
    }
    return true;
}

namespace {

void extend_embeddings(const Structure& a, const Structure& b, bool ordered, std::vector<std::size_t>& current,
                       std::vector<char>& used, std::vector<StructMap>& out)
{
    const std::size_t i = current.size();
    if (i == a.size()) {
        StructMap m;
        m.values = current;
        m.ordered = std::is_sorted(current.begin(), current.end());
        out.push_back(std::move(m));
        return;
    }
    const std::size_t start = (ordered && i > 0) ? current.back() + 1 : 0;
    for (std::size_t t = start; t < b.size(); ++t) {
        if (used[t] || a.unary(i) != b.unary(t)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
            ok = a.rel(j, i) == b.rel(current[j], t) && a.rel(i, j) == b.rel(t, current[j]);
        }
        if (!ok) continue;
        used[t] = 1;
        current.push_back(t);
        extend_embeddings(a, b, ordered, current, used, out);
        current.pop_back();
        used[t] = 0;
    }
}

}  // namespace

std::vector<StructMap> enumerate_embeddings(const Structure& a, const Structure& b, bool ordered)
{
    std::vector<StructMap> out;
    if (a.size() > b.size()) return out;
    std::vector<std::size_t> current;
    std::vector<char> used(b.size(), 0);
    extend_embeddings(a, b, ordered, current, used, out);
    return out;
}

bool is_irreducible(const Structure& a)
{
    for (std::size_t j = 1; j < a.size(); ++j) {
        for (Value v : a.column(j)) {
            if (v == 0) return false;
        }
    }
    return true;
}

Amalgam free_amalgam(const Structure& a, const Structure& b, const StructMap& f,
                     const Structure& c, const StructMap& g)
{
    if (a.language() != b.language() || a.language() != c.language()) {
        throw Error(ErrorKind::LanguageMismatch, "free_amalgam: languages differ");
    }
    if (!is_embedding(a, b, f.values) || !is_embedding(a, c, g.values)) {
        throw Error(ErrorKind::IndexOutOfRange, "free_amalgam: f and g must be embeddings of the common source");
    }

    // Position of each point of C inside D.
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> s_values(c.size(), unset);
    for (std::size_t i = 0; i < a.size(); ++i) s_values[g.values[i]] = f.values[i];
    std::size_t next = b.size();
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (s_values[x] == unset) s_values[x] = next++;
    }

    // Preimage in C of each D point that lies in s's image.
    std::vector<std::size_t> from_c(next, unset);
    for (std::size_t x = 0; x < c.size(); ++x) from_c[s_values[x]] = x;

    Structure d(a.language());
    std::vector<Value> column;
    for (std::size_t j = 0; j < next; ++j) {
        column.assign(j, 0);
        for (std::size_t i = 0; i < j; ++i) {
            if (j < b.size()) {
                column[i] = b.rel(i, j);
            } else if (from_c[i] != unset) {
                column[i] = c.rel(from_c[i], from_c[j]);
            }
        }
        const Value u = j < b.size() ? b.unary(j) : c.unary(from_c[j]);
        d.append(u, column);
    }

    Amalgam out{std::move(d), {}, {}};
    out.r.values.resize(b.size());
    std::iota(out.r.values.begin(), out.r.values.end(), std::size_t{0});
    out.r.ordered = true;
    out.s.values = std::move(s_values);
    out.s.ordered = std::is_sorted(out.s.values.begin(), out.s.values.end());
    return out;
}

std::string describe(const Structure& a)
{
    std::ostringstream os;
    os << "n=" << a.size() << " unary=[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << int(a.unary(i));
    os << "] rel={";
    bool first = true;
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (a.rel(i, j) == 0) continue;
            os << (first ? "" : ",") << "(" << i << "," << j << "):" << int(a.rel(i, j));
            first = false;
        }
    }
    os << "}";
    return os.str();
}

}  // namespace brd
