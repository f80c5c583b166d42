#include "brd/forb_class.hpp"

#include "brd/copy_search.hpp"
#include "brd/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace brd {

struct ForbFamily::Cache {
    std::mutex mutex;
    std::map<std::size_t, std::vector<Structure>> members;
};

ForbFamily::ForbFamily(Language lang, std::vector<Structure> forbidden)
    : lang_(std::move(lang)), forbidden_(std::move(forbidden)), cache_(std::make_shared<Cache>())
{
    for (std::size_t i = 0; i < forbidden_.size(); ++i) {
        const Structure& f = forbidden_[i];
        if (f.language() != lang_) {
            throw Error(ErrorKind::LanguageMismatch, "forbidden[" + std::to_string(i) + "] has a different language");
        }
        if (f.size() == 0) {
            throw Error(ErrorKind::NotIrreducible, "forbidden[" + std::to_string(i) + "] is empty");
        }
        if (!is_irreducible(f)) {
            throw Error(ErrorKind::NotIrreducible, "forbidden[" + std::to_string(i) + "] is not irreducible");
        }
        max_size_ = std::max(max_size_, f.size());
    }
    for (std::size_t i = 0; i < forbidden_.size(); ++i) {
        for (std::size_t j = 0; j < forbidden_.size(); ++j) {
            if (i == j) continue;
            if (!enumerate_embeddings(forbidden_[i], forbidden_[j], false).empty()) {
                warnings_.push_back("forbidden[" + std::to_string(i) + "] embeds into forbidden[" +
                                    std::to_string(j) + "]");
            }
        }
    }
}

namespace {

struct OnePointHost {
    const Structure& base;
    std::size_t m;
    Value new_unary;
    std::span<const Value> column;

    Value unary(std::size_t x) const { return x == m ? new_unary : base.unary(x); }
    Value rel(std::size_t x, std::size_t y) const
    {
        if (x == m) return base.language().flip_of(column[y]);
        if (y == m) return column[x];
        return base.rel(x, y);
    }
};

}  // namespace

std::optional<std::size_t> first_forbidden_copy(const ForbFamily& family, const Structure& a)
{
    if (a.language() != family.language()) {
        throw Error(ErrorKind::LanguageMismatch, "structure language differs from the family's");
    }
    detail::StructureHost host{a};
    std::vector<std::size_t> pool;
    for (std::size_t fi = 0; fi < family.forbidden().size(); ++fi) {
        const Structure& f = family.forbidden()[fi];
        for (std::size_t x = 0; x < a.size(); ++x) {
            pool.clear();
            for (std::size_t y = x + 1; y < a.size(); ++y) {
                if (a.rel(x, y) != 0) pool.push_back(y);
            }
            if (detail::has_copy_through(f, host, x, pool)) return fi;
        }
    }
    return std::nullopt;
}

bool contains(const ForbFamily& family, const Structure& a)
{
    return !first_forbidden_copy(family, a).has_value();
}

bool extension_in_class(const ForbFamily& family, const Structure& base, std::size_t m, Value unary,
                        std::span<const Value> column)
{
    if (unary >= family.language().unary_types) return false;
    OnePointHost host{base, m, unary, column.first(m)};
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < m; ++i) {
        if (column[i] != 0) pool.push_back(i);
    }
    for (const Structure& f : family.forbidden()) {
        if (detail::has_copy_through(f, host, m, pool)) return false;
    }
    return true;
}

namespace {

// Depth-first enumeration of valid relation vectors; a prefix is viable iff
// it is valid with an all-zero tail (free amalgamation over the prefix).
void extend_vectors(const ForbFamily& family, const Structure& base, Value unary, std::vector<Value>& vec,
                    std::size_t pos, std::vector<ExtensionType>& out)
{
    const std::size_t m = base.size();
    if (pos == m) {
        out.push_back({m, unary, vec});
        return;
    }
    for (Value v = 0; v < family.language().k; ++v) {
        vec[pos] = v;
        if (v == 0 || extension_in_class(family, base, pos + 1, unary, vec)) {
            extend_vectors(family, base, unary, vec, pos + 1, out);
        }
    }
    vec[pos] = 0;
}

}  // namespace

std::vector<ExtensionType> valid_extensions(const ForbFamily& family, const Structure& base)
{
    std::vector<ExtensionType> out;
    std::vector<Value> vec(base.size(), 0);
    for (Value u = 0; u < family.language().unary_types; ++u) {
        if (!extension_in_class(family, base, 0, u, vec)) continue;
        extend_vectors(family, base, u, vec, 0, out);
    }
    return out;
}

const std::vector<Structure>& ForbFamily::members(std::size_t n) const
{
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->members.find(n);
    if (it != cache_->members.end()) return it->second;

    // Build iteratively from the largest cached size below n.
    std::size_t have = 0;
    std::vector<Structure> current{Structure(lang_)};
    for (std::size_t s = n; s-- > 0;) {
        auto found = cache_->members.find(s);
        if (found != cache_->members.end()) {
            have = s;
            current = found->second;
            break;
        }
    }
    cache_->members.emplace(have, current);
    for (std::size_t size = have; size < n; ++size) {
        std::vector<Structure> next;
        for (const Structure& b : current) {
            for (const ExtensionType& ext : valid_extensions(*this, b)) {
                Structure c = b;
                c.append(ext.unary, ext.relations);
                next.push_back(std::move(c));
            }
        }
        current = std::move(next);
        cache_->members.emplace(size + 1, current);
    }
    return cache_->members.at(n);
}

std::vector<Value> table_key(const Structure& a)
{
    std::vector<Value> key(a.unary_values());
    for (std::size_t j = 1; j < a.size(); ++j) {
        auto col = a.column(j);
        key.insert(key.end(), col.begin(), col.end());
    }
    return key;
}

std::vector<Structure> irr_structures(const ForbFamily& family)
{
    std::vector<Structure> out;
    if (family.forbidden().empty()) {
        for (Value u = 0; u < family.language().unary_types; ++u) {
            Structure s(family.language());
            s.append(u, {});
            out.push_back(std::move(s));
        }
        return out;
    }

    std::map<std::pair<std::size_t, std::vector<Value>>, Structure> found;
    for (const Structure& f : family.forbidden()) {
        const std::size_t n = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<std::size_t> points;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) points.push_back(i);
            }
            std::vector<std::size_t> perm(points.size());
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            do {
                Structure s(family.language());
                std::vector<Value> column;
                for (std::size_t j = 0; j < perm.size(); ++j) {
                    column.resize(j);
                    for (std::size_t i = 0; i < j; ++i) column[i] = f.rel(points[perm[i]], points[perm[j]]);
                    s.append(f.unary(points[perm[j]]), column);
                }
                auto key = std::make_pair(s.size(), table_key(s));
                if (!found.count(key) && contains(family, s)) found.emplace(key, std::move(s));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    for (auto& [key, s] : found) out.push_back(std::move(s));
    return out;
}

}  // namespace brd
