#include "brd/limit.hpp"

#include "brd/error.hpp"

#include <queue>
#include <random>
#include <tuple>

namespace brd {

LimitPrefix::LimitPrefix(ForbFamily family, Structure structure, std::vector<ScheduleEntry> schedule)
    : family_(std::move(family)), structure_(std::move(structure)), schedule_(std::move(schedule))
{
    if (structure_.language() != family_.language()) {
        throw Error(ErrorKind::LanguageMismatch, "prefix language differs from the family's");
    }
    if (auto bad = first_forbidden_copy(family_, structure_)) {
        throw Error(ErrorKind::NotInClass, "prefix embeds forbidden[" + std::to_string(*bad) + "]");
    }
    for (std::size_t n = 0; n < structure_.size(); ++n) index_level(n);
}

Node LimitPrefix::c(std::size_t n) const
{
    auto col = structure_.column(n);
    return Node(col.begin(), col.end());
}

void LimitPrefix::index_level(std::size_t n)
{
    left_index_[{structure_.unary(n), node_support(c(n))}].push_back(n);
}

std::optional<std::size_t> LimitPrefix::find_left(Value unary, const Node& w, std::size_t min_level) const
{
    auto it = left_index_.find({unary, node_support(w)});
    if (it == left_index_.end()) return std::nullopt;
    const std::size_t lo = std::max(min_level, w.size());
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), lo);
    if (pos == it->second.end()) return std::nullopt;
    return *pos;
}

void LimitPrefix::append_level(Value unary, const Node& w, std::size_t base, bool demand)
{
    const std::size_t n = size();
    if (w.size() > n) {
        throw Error(ErrorKind::LevelMismatch, "extension node above the prefix");
    }
    const Node column = node_left(w, n);
    if (!extension_in_class(family_, structure_, n, unary, column)) {
        throw Error(ErrorKind::NotInClass, "extension at level " + std::to_string(n) + " leaves the class");
    }
    structure_.append(unary, column);
    schedule_.push_back({n, base, unary, node_left(w, base), demand});
    index_level(n);
}

namespace {

// Per-position digit orders derived from the seed, produced sequentially so
// that orders never depend on how deep the generator goes.
class DigitOrders {
public:
    DigitOrders(int k, int unary_types, std::uint64_t seed) : k_(k), seed_(seed), engine_(seed)
    {
        unary_ = identity(unary_types);
        shuffle(unary_, 0);
    }

    const std::vector<Value>& unary() const { return unary_; }

    const std::vector<Value>& at(std::size_t p)
    {
        while (orders_.size() <= p) {
            orders_.push_back(identity(k_));
            shuffle(orders_.back(), 1);  // 0 stays first: sparse types early
        }
        return orders_[p];
    }

private:
    static std::vector<Value> identity(int n)
    {
        std::vector<Value> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<Value>(i);
        return v;
    }

    void shuffle(std::vector<Value>& v, std::size_t from)
    {
        if (seed_ == 0) return;
        for (std::size_t i = v.size(); i > from + 1; --i) {
            std::size_t j = from + static_cast<std::size_t>(engine_() % (i - from));
            std::swap(v[i - 1], v[j]);
        }
    }

    int k_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::vector<Value> unary_;
    std::vector<std::vector<Value>> orders_;
};

// Lazy listing of the valid extension types of K_m, by weight (number of
// nonzero positions), then unary type, then support from the top position
// down, lowest first. Every forbidden structure is irreducible, so dropping
// relations keeps a valid type valid; an invalid partial vector prunes its
// whole subtree.
class TypeCursor {
public:
    explicit TypeCursor(std::size_t m) : m_(m), vec_(m, 0) {}

    std::optional<std::pair<Value, Node>> next(const ForbFamily& family, const Structure& k_struct,
                                               DigitOrders& orders)
    {
        const auto& uorder = orders.unary();
        while (!done_) {
            if (!in_phase_) {
                if (w_ > m_) {
                    done_ = true;
                    break;
                }
                in_phase_ = true;
                fresh_ = true;
                pos_.clear();
                dig_.clear();
                std::fill(vec_.begin(), vec_.end(), 0);
                u_ = uorder[ui_];
                w0_done_ = !extension_in_class(family, k_struct, m_, u_, vec_);
            }
            if (!w0_done_ && advance(family, k_struct, orders)) return std::make_pair(u_, vec_);
            in_phase_ = false;
            if (++ui_ == uorder.size()) {
                ui_ = 0;
                ++w_;
            }
        }
        return std::nullopt;
    }

private:
    bool advance(const ForbFamily& family, const Structure& k_struct, DigitOrders& orders)
    {
        const std::size_t nz = static_cast<std::size_t>(family.language().k) - 1;
        if (w_ == 0) {
            const bool r = fresh_;
            fresh_ = false;
            return r;
        }
        std::size_t cp = 0;
        std::size_t cd = 0;
        auto step = [&] {
            if (++cd == nz) {
                cd = 0;
                ++cp;
            }
        };
        if (fresh_) {
            fresh_ = false;
            cp = w_ - 1;
        } else {
            cp = pos_.back();
            cd = dig_.back();
            vec_[cp] = 0;
            pos_.pop_back();
            dig_.pop_back();
            step();
        }
        while (true) {
            const std::size_t t = pos_.size();
            const std::size_t hi = t == 0 ? m_ - 1 : pos_.back() - 1;
            if (cp > hi) {
                if (t == 0) return false;
                cp = pos_.back();
                cd = dig_.back();
                vec_[cp] = 0;
                pos_.pop_back();
                dig_.pop_back();
                step();
                continue;
            }
            vec_[cp] = orders.at(cp)[1 + cd];
            if (extension_in_class(family, k_struct, m_, u_, vec_)) {
                pos_.push_back(cp);
                dig_.push_back(cd);
                if (pos_.size() == w_) return true;
                cp = w_ - 1 - pos_.size();
                cd = 0;
                continue;
            }
            vec_[cp] = 0;
            step();
        }
    }

    std::size_t m_;
    Node vec_;
    std::size_t w_ = 0;
    std::size_t ui_ = 0;
    Value u_ = 0;
    bool in_phase_ = false;
    bool fresh_ = false;
    bool w0_done_ = false;
    bool done_ = false;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> dig_;
};

}  // namespace

LimitPrefix generate_prefix(const ForbFamily& family, std::size_t n, std::uint64_t seed)
{
    const Language& lang = family.language();
    bool nonempty = false;
    for (Value u = 0; u < lang.unary_types && !nonempty; ++u) {
        nonempty = extension_in_class(family, Structure(lang), 0, u, {});
    }
    if (!nonempty) {
        throw Error(ErrorKind::EmptyClass, "no singleton structure lies in K");
    }

    LimitPrefix prefix(family, Structure(lang));
    DigitOrders orders(lang.k, lang.unary_types, seed);
    std::vector<TypeCursor> cursors;
    std::vector<std::size_t> popped;

    // (m + i, tie, m); the seed decides ties between bases.
    using Key = std::tuple<std::size_t, std::uint64_t, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    auto tie = [seed](std::size_t m) -> std::uint64_t {
        if (seed == 0) return m;
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (m + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    auto open = [&](std::size_t m) {
        cursors.emplace_back(m);
        popped.push_back(0);
        queue.push({m, tie(m), m});
    };
    open(0);

    while (prefix.size() < n && !queue.empty()) {
        const std::size_t m = std::get<2>(queue.top());
        queue.pop();
        auto type = cursors[m].next(family, prefix.structure(), orders);
        if (!type) continue;
        ++popped[m];
        queue.push({m + popped[m], tie(m), m});
        if (prefix.find_left(type->first, type->second, m)) continue;
        prefix.append_level(type->first, type->second, m, false);
        open(prefix.size());
    }
    return prefix;
}

DensityReport verify_left_dense(const LimitPrefix& prefix, std::size_t horizon)
{
    DensityReport report;
    report.horizon = horizon;
    const Structure& k_struct = prefix.structure();

    for (const ScheduleEntry& e : prefix.schedule()) {
        bool ok = e.level < prefix.size() && e.base <= e.level && e.relations.size() == e.base &&
                  prefix.u(e.level) == e.unary;
        if (ok) ok = prefix.c(e.level) == node_left(e.relations, e.level);
        if (!ok) {
            report.violations.push_back("level " + std::to_string(e.level) + " does not realize its scheduled extension of K_" +
                                        std::to_string(e.base));
        }
    }

    for (std::size_t m = 0; m <= horizon && m <= prefix.size(); ++m) {
        const Structure base = initial_segment(k_struct, m);
        for (ExtensionType& ext : valid_extensions(prefix.family(), base)) {
            DensityItem item;
            item.base = m;
            item.witness = prefix.find_left(ext.unary, ext.relations, m);
            item.ext = std::move(ext);
            if (item.witness) ++report.met;
            else ++report.unmet;
            report.items.push_back(std::move(item));
        }
    }
    return report;
}

}  // namespace brd
