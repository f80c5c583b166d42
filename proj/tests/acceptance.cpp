// Acceptance run: one PASS/FAIL line per criterion on stdout, progress on
// stderr. Exit status is nonzero when any criterion fails.

#include "oracles.hpp"

#include "brd/cli.hpp"
#include "brd/nice.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

using namespace brd;

namespace {

using Clock = std::chrono::steady_clock;

struct Line {
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit = 0;  // 0: no runtime bound
};

std::map<int, Line> lines;

template <class F>
void run(int id, double limit, F&& body)
{
    std::cerr << "criterion " << id << " ..." << std::endl;
    const auto t0 = Clock::now();
    Line l;
    try {
        l = body();
    } catch (const std::exception& e) {
        l.pass = false;
        l.detail = std::string("exception: ") + e.what();
    }
    l.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    l.limit = limit;
    if (limit > 0 && l.seconds >= limit) {
        l.pass = false;
        l.detail += "; over the time limit";
    }
    lines[id] = l;
    std::cerr << "criterion " << id << (l.pass ? " PASS " : " FAIL ") << l.detail << std::endl;
}

std::string fmt(double x)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

LevelSet from_mask(std::uint64_t mask)
{
    LevelSet s;
    for (std::size_t i = 0; i < 64; ++i) {
        if (mask >> i & 1) s.push_back(i);
    }
    return s;
}

std::uint64_t to_mask(const LevelSet& s)
{
    std::uint64_t m = 0;
    for (std::size_t v : s) m |= std::uint64_t{1} << v;
    return m;
}

// Shared between criteria 5, 6 and 8.
struct Window {
    std::string name;
    LimitPrefix prefix;
    std::vector<char> envelope;  // by mask over [0, 10], definitional mode
};
std::vector<Window> windows;
double crit_ratio = 0;
std::size_t crit_samples = 0;
std::size_t crit_violations = 0;

void record_crit(const LevelSet& s, const LimitPrefix& p)
{
    if (s.empty()) return;
    const double c = static_cast<double>(crit(s, p).crit().size());
    const double b = static_cast<double>(crit_bound(s.size(), p.family()));
    ++crit_samples;
    if (c > b) ++crit_violations;
    crit_ratio = std::max(crit_ratio, c / b);
}

Line criterion1()
{
    std::mt19937_64 rng(1);
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (const char* fam : {"tf.json", "g0u2.json", "k3fam.json"}) {
        const ForbFamily f = oracle::load_family(fam);
        for (int i = 0; i < 500; ++i) {
            const Structure a = oracle::random_member(f, 1 + rng() % 14, rng);
            ++checked;
            if (!(structure_of(coding_tree_of(a)) == a)) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " structures, " + std::to_string(bad) + " mismatches"};
}

Line criterion2()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    std::vector<LimitPrefix> prefixes;
    for (std::uint64_t s = 0; s < 4; ++s) prefixes.push_back(generate_prefix(tf, 8 + 4 * (s % 2), s));
    std::mt19937_64 rng(2);
    std::size_t n_inst = 0;
    std::size_t agree = 0;
    std::size_t positive = 0;
    for (int i = 0; i < 1200; ++i) {
        const LimitPrefix& p = prefixes[static_cast<std::size_t>(i) % prefixes.size()];
        const std::size_t m = rng() % 6;
        const std::size_t n = m + rng() % (6 - m);
        std::vector<Node> src = successors(Node{}, m, 2);
        std::shuffle(src.begin(), src.end(), rng);
        src.resize(1 + rng() % std::min<std::size_t>(src.size(), 4));
        std::vector<Node> dst;
        if (i % 2 == 0) {
            auto all = successors(Node{}, n, 2);
            std::shuffle(all.begin(), all.end(), rng);
            dst.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(src.size(), all.size())));
        } else {
            // Random nodes above the sources: age maps are common here.
            std::set<Node> used;
            for (const Node& s : src) {
                Node t = s;
                while (t.size() < n) t.push_back(static_cast<Value>(rng() % 4 == 0 ? 1 : 0));
                used.insert(t);
                dst.push_back(t);
            }
            if (used.size() != dst.size()) continue;
        }
        if (dst.size() != src.size()) continue;
        const AgedSide a{&p.structure(), src};
        const AgedSide b{&p.structure(), dst};
        const bool fast = check_age_map(tf, a, b).is_age_map;
        const bool brute = check_age_map_bruteforce(tf, a, b, 4).is_age_map;
        ++n_inst;
        if (fast == brute) ++agree;
        if (brute) ++positive;
    }
    return {n_inst >= 1000 && agree == n_inst, std::to_string(agree) + "/" + std::to_string(n_inst) +
                                                   " instances agree (" + std::to_string(positive) + " age maps)"};
}

std::size_t c4_embeddings = 0;
std::size_t c4_replays = 0;

Line criterion4()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    std::size_t ok = 0;
    std::size_t total = 0;
    std::size_t deepest = 0;
    std::size_t replay_bad = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const LimitPrefix p = generate_prefix(tf, 256, seed);
        for (std::size_t d = 1; d <= 4; ++d) {
            for (const Structure& a : tf.members(d)) {
                ++total;
                AgedEmbedding f;
                try {
                    f = find_aged_embedding(a, p);
                } catch (const Error&) {
                    continue;
                }
                if (!check_aged_embedding(f.f, a, p.structure(), tf).ok) continue;
                ++ok;
                deepest = std::max(deepest, f.induced.back());
                // Independent replay of the prime maps through the oracle.
                for (std::size_t m = 1; m < a.size(); ++m) {
                    std::vector<Node> primed;
                    for (const Node& x : f.f.level[m - 1]) {
                        for (Value i = 0; i < 2; ++i) {
                            primed.push_back(x);
                            primed.back().push_back(i);
                        }
                    }
                    ++c4_replays;
                    const AgedSide src{&a, successors(Node{}, m, 2)};
                    const AgedSide dst{&p.structure(), primed};
                    if (!check_age_map_bruteforce(tf, src, dst, 3).is_age_map) ++replay_bad;
                }
            }
        }
    }
    c4_embeddings = ok;
    return {ok == total && replay_bad == 0, std::to_string(ok) + "/" + std::to_string(total) +
                                                " aged embeddings verified, deepest level " + std::to_string(deepest) +
                                                ", prime-map replays failing " + std::to_string(replay_bad)};
}

Line criterion5()
{
    windows.clear();
    const ForbFamily tf = oracle::load_family("tf.json");
    const ForbFamily g0 = oracle::load_family("g0.json");
    windows.push_back({"TF", generate_prefix(tf, 32, 0), {}});
    windows.push_back({"Forb(empty)", generate_prefix(g0, 32, 0), {}});
    std::size_t disagree = 0;
    std::size_t envelopes = 0;
    for (Window& w : windows) {
        w.envelope.assign(std::size_t{1} << 11, 0);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 11); ++mask) {
            const LevelSet s = from_mask(mask);
            const bool combo = is_envelope(s, w.prefix, EnvelopeMode::Combinatorial);
            const bool def = is_envelope(s, w.prefix, EnvelopeMode::Definitional);
            w.envelope[mask] = def;
            if (combo != def) ++disagree;
            if (def) ++envelopes;
            record_crit(s, w.prefix);
        }
    }
    return {disagree == 0, "2x2048 sets, " + std::to_string(envelopes) + " envelopes, " + std::to_string(disagree) +
                               " disagreements"};
}

Line criterion6()
{
    std::size_t bad_min = 0;
    std::size_t bad_meet = 0;
    std::size_t bad_interior = 0;
    std::size_t sets = 0;
    std::size_t env_count = 0;
    for (const Window& w : windows) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << 11); ++mask) {
            const LevelSet s = from_mask(mask);
            const std::size_t top = s.back();
            const std::uint64_t range = (std::uint64_t{2} << top) - 1;
            ++sets;
            // Every envelope E with S <= E <= [0, max S].
            std::vector<std::uint64_t> over;
            for (std::uint64_t e = mask;; e = (e + 1) | mask) {
                if (w.envelope[e]) over.push_back(e);
                if (e == range) break;
            }
            std::vector<std::uint64_t> minimal;
            std::uint64_t meet = range;
            for (std::uint64_t e : over) {
                meet &= e;
                bool is_min = true;
                for (std::uint64_t f : over) {
                    if (f != e && (f & e) == f) is_min = false;
                }
                if (is_min) minimal.push_back(e);
            }
            const std::uint64_t c = to_mask(closure(s, w.prefix));
            if (minimal.size() != 1 || minimal[0] != c) ++bad_min;
            if (over.empty() || meet != c) ++bad_meet;
            try {
                interior(from_mask(c), w.prefix);
            } catch (const Error&) {
                ++bad_interior;
            }
            record_crit(from_mask(c), w.prefix);
        }
        for (std::uint64_t e = 1; e < (std::uint64_t{1} << 11); ++e) {
            if (!w.envelope[e]) continue;
            ++env_count;
            const LevelSet in = normalize_levels(interior(from_mask(e), w.prefix));
            if (closure(in, w.prefix) != from_mask(e)) ++bad_interior;
        }
    }
    return {bad_min == 0 && bad_meet == 0 && bad_interior == 0,
            std::to_string(sets) + " sets: minimality failures " + std::to_string(bad_min) + ", intersection failures " +
                std::to_string(bad_meet) + "; " + std::to_string(env_count) + " envelopes, interior failures " +
                std::to_string(bad_interior)};
}

Line criterion3()
{
    const SelfCheckStats& st = self_check_stats();
    const std::size_t checks = st.prime_checks + st.extend_checks;
    const std::size_t fails = st.prime_failures + st.extend_failures;
    return {fails == 0 && checks > 0 && c4_replays > 0,
            std::to_string(checks) + " self-checks (" + std::to_string(st.prime_checks.load()) + " prime, " +
                std::to_string(st.extend_checks.load()) + " extend), " + std::to_string(fails) + " fired; " +
                std::to_string(c4_replays) + " oracle replays"};
}

Line criterion7()
{
    const ForbFamily g0 = oracle::load_family("g0.json");
    const LimitPrefix r4(g0, oracle::load_structure("r4.json", g0.language()));
    const LevelSet c = closure({2, 3}, r4);
    const auto in = interior({0, 2, 3}, r4);
    const bool ok = c == LevelSet{0, 2, 3} && in == std::vector<std::size_t>{3, 2};
    std::string d = "closure {";
    for (std::size_t v : c) d += std::to_string(v) + (v == c.back() ? "" : ",");
    d += "} interior (";
    for (std::size_t i = 0; i < in.size(); ++i) d += std::to_string(in[i]) + (i + 1 == in.size() ? "" : ",");
    return {ok, d + ")"};
}

Line criterion8()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    std::mt19937_64 rng(8);
    std::vector<LimitPrefix> ps;
    for (std::uint64_t s = 0; s < 4; ++s) ps.push_back(generate_prefix(tf, 64, s));
    for (int i = 0; i < 10000; ++i) {
        const LimitPrefix& p = ps[static_cast<std::size_t>(i) % ps.size()];
        std::vector<std::size_t> s;
        const std::size_t size = 1 + rng() % 4;
        while (s.size() < size) {
            s.push_back(rng() % 64);
            s = normalize_levels(s);
        }
        record_crit(s, p);
    }
    return {crit_violations == 0, std::to_string(crit_samples) + " sets, " + std::to_string(crit_violations) +
                                      " violations, max |crit|/bound " + fmt(crit_ratio)};
}

Line criterion9()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    LimitPrefix p = generate_prefix(tf, 512, 0);
    const std::size_t horizon = 6;
    const YStructure y = build_y(p, horizon);
    const NiceEmbedding eta = nice_embedding(y, p, 1'000'000);
    std::size_t bad = 0;
    if (!is_embedding(y.structure, p.structure(), eta.eta)) ++bad;
    bad += nice_clause_violations(eta, p).size() + nice_left_violations(eta, p).size();
    LevelSet k;
    for (std::size_t a = 0; a < horizon; ++a) k.push_back(eta.eta[y.k_position[a]]);
    std::size_t fa = 0, fb = 0, fc = 0, fd = 0, sets = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << horizon); ++mask) {
        if (std::popcount(mask) > 3) continue;
        LevelSet s;
        for (std::size_t i = 0; i < horizon; ++i) {
            if (mask >> i & 1) s.push_back(k[i]);
        }
        ++sets;
        NiceEnvelope e;
        try {
            e = nice_envelope(s, eta, y, p);
        } catch (const Error&) {
            ++fa;
            continue;
        }
        if (!is_envelope(e.envelope, p)) ++fb;
        const LevelSet c = closure(s, p);
        if (normalize_levels(interior(c, p)) != s) ++fc;
        if (!std::includes(e.envelope.begin(), e.envelope.end(), c.begin(), c.end())) ++fd;
    }
    return {bad == 0 && fa + fb + fc + fd == 0,
            "prefix " + std::to_string(p.size()) + " levels (" + std::to_string(eta.demand_levels) + " on demand), |Y| " +
                std::to_string(y.points.size()) + ", " + std::to_string(sets) + " sets; failures a=" +
                std::to_string(fa) + " b=" + std::to_string(fb) + " c=" + std::to_string(fc) + " d=" +
                std::to_string(fd) + ", nice-clause " + std::to_string(bad)};
}

Line criterion10()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    std::set<std::pair<std::vector<Value>, std::vector<std::size_t>>> distinct;
    std::size_t maps = 0, env_bad = 0, close_bad = 0, pairs = 0;
    for (std::uint64_t s = 0; s < 6; ++s) {
        const LimitPrefix src = generate_prefix(tf, 9, s);
        for (std::uint64_t t = 0; t < 10; ++t) {
            LimitPrefix dst = generate_prefix(tf, 48, 100 + t);
            const AgedEmbedding h = oracle::grow_aged_embedding(src.structure(), dst, 100000);
            if (!check_aged_embedding(h.f, src.structure(), dst.structure(), tf).ok) {
                ++env_bad;
                continue;
            }
            ++maps;
            std::vector<Value> key = table_key(dst.structure());
            key.push_back(static_cast<Value>(s));
            distinct.insert({key, h.induced});
            auto image = [&](const LevelSet& x) {
                LevelSet out;
                for (std::size_t v : x) out.push_back(h.induced[v]);
                return out;
            };
            oracle::for_each_subset(0, 8, [&](const LevelSet& x) {
                if (x.empty()) return;
                ++pairs;
                if (is_envelope(x, src) != is_envelope(image(x), dst)) ++env_bad;
                if (closure(image(x), dst) != image(closure(x, src))) ++close_bad;
            });
        }
    }
    return {distinct.size() >= 50 && env_bad == 0 && close_bad == 0,
            std::to_string(distinct.size()) + " distinct aged embeddings of K_9, " + std::to_string(pairs) +
                " (h, S) pairs; envelope mismatches " + std::to_string(env_bad) + ", closure mismatches " +
                std::to_string(close_bad)};
}

Line criterion11()
{
    const ForbFamily g0 = oracle::load_family("g0.json");
    const DegreeBoundReport r = degree_bound(make_graph(g0.language(), 2, {{0, 1}}), g0, 3);
    const auto o = census_oracle(g0, 3);
    const bool ok = r.ell == 11 && r.census == std::vector<std::uint64_t>{1, 2, 8} && o == r.census;
    return {ok, "ell " + std::to_string(r.ell) + " from counts " + std::to_string(r.census[0]) + "," +
                    std::to_string(r.census[1]) + "," + std::to_string(r.census[2]) + "; oracle " +
                    std::to_string(o[0]) + "," + std::to_string(o[1]) + "," + std::to_string(o[2])};
}

Line criterion12()
{
    const ForbFamily tf = oracle::load_family("tf.json");
    const ForbFamily k3 = oracle::load_family("k3fam.json");
    const LimitPrefix p = generate_prefix(tf, 16, 0);
    const LimitPrefix q = generate_prefix(k3, 16, 0);
    const Structure e2 = make_graph(tf.language(), 2, {{0, 1}});
    const Structure d2 = oracle::load_structure("d2.json", k3.language());
    const auto ve = ordered_decomposition(e2);
    const auto vd = ordered_decomposition(d2);
    const PartitionCheck a = check_partition(e2, ve, p.structure());
    const PartitionCheck b = check_partition(d2, vd, q.structure());
    const bool ok = a.exact() && b.exact() && ve.size() == 1 && vd.size() == 2 &&
                    a.embeddings == oracle::embeddings(e2, p.structure(), false).size() &&
                    b.embeddings == oracle::embeddings(d2, q.structure(), false).size();
    return {ok, "E2: " + std::to_string(a.embeddings) + " embeddings = " + std::to_string(a.decomposed) +
                    " over 1 variant; directed pair: " + std::to_string(b.embeddings) + " = " +
                    std::to_string(b.decomposed) + " over 2 variants"};
}

std::string cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "brd");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

Line criterion13()
{
    std::size_t mismatches = 0;
    std::size_t compared = 0;
    for (const char* fam : {"tf.json", "g0u2.json", "k3fam.json"}) {
        const ForbFamily f = oracle::load_family(fam);
        for (std::uint64_t seed : {0u, 9u}) {
            const Json a = prefix_to_json(generate_prefix(f, 200, seed));
            const Json b = prefix_to_json(generate_prefix(f, 200, seed));
            ++compared;
            if (a.dump() != b.dump()) ++mismatches;
        }
    }
    const auto dir = std::filesystem::temp_directory_path();
    const std::string pre = (dir / "brd_acceptance_prefix.json").string();
    const std::string eta = (dir / "brd_acceptance_eta.json").string();
    const std::string tf = oracle::fixture("tf.json");
    const std::string g0 = oracle::fixture("g0.json");
    cli({"gen", "--family", tf, "--size", "64", "--seed", "3", "--out", pre});
    const std::vector<std::vector<std::string>> commands = {
        {"check", "--family", tf, "--structure", oracle::fixture("p4.json")},
        {"check", "--family", tf, "--structure", oracle::fixture("k3.json")},
        {"gen", "--family", tf, "--size", "40", "--seed", "7"},
        {"verify-dense", "--family", tf, "--prefix", pre, "--horizon", "3"},
        {"ct", "--structure", oracle::fixture("r4.json")},
        {"agemap", "--family", tf, "--prefix", oracle::fixture("p4.json"), "--map", oracle::fixture("agemap_false.json")},
        {"aemb", "find", "--family", tf, "--prefix", pre, "--structure", oracle::fixture("e2.json")},
        {"envelope", "check", "--family", tf, "--prefix", pre, "--levels", "3,5,9", "--mode", "definitional"},
        {"envelope", "close", "--family", tf, "--prefix", pre, "--levels", "5,9,12"},
        {"envelope", "interior", "--family", g0, "--prefix", oracle::fixture("r4.json"), "--levels", "0,2,3"},
        {"crit", "--family", tf, "--prefix", pre, "--levels", "7,20"},
        {"nice", "--family", tf, "--prefix", pre, "--horizon", "4", "--out", eta},
        {"bound", "--family", g0, "--structure", oracle::fixture("e2.json")},
        {"bound", "--family", tf, "--structure", oracle::fixture("e2.json"), "--envelope-bound", "5"},
        {"bound", "--family", tf, "--structure", oracle::fixture("e2.json")},
        {"experiment", "--family", tf, "--prefix", pre, "--structure", oracle::fixture("e2.json"), "--window", "4",
         "--budget", "300"},
        {"experiment", "--family", tf, "--prefix", pre, "--structure", oracle::fixture("v1.json"), "--coloring",
         "edge", "--window", "3", "--budget", "100"},
    };
    for (auto c : commands) {
        c.push_back("--no-timestamp");
        auto j1 = c;
        j1.insert(j1.end(), {"--jobs", "1"});
        auto j8 = c;
        j8.insert(j8.end(), {"--jobs", "8"});
        const std::string a = cli(j1);
        const std::string b = cli(j1);
        const std::string d = cli(j8);
        compared += 2;
        if (a != b) ++mismatches;
        if (a != d) ++mismatches;
    }
    std::remove(pre.c_str());
    std::remove(eta.c_str());
    return {mismatches == 0, std::to_string(compared) + " comparisons, " + std::to_string(mismatches) + " differ"};
}

}  // namespace

int main()
{
    run(1, 5, criterion1);
    run(2, 120, criterion2);
    run(4, 300, criterion4);
    run(5, 600, criterion5);
    run(6, 900, criterion6);
    run(3, 0, criterion3);
    run(7, 0, criterion7);
    run(8, 0, criterion8);
    run(9, 1800, criterion9);
    run(10, 0, criterion10);
    run(11, 0, criterion11);
    run(12, 0, criterion12);
    run(13, 0, criterion13);

    bool all = true;
    for (const auto& [id, l] : lines) {
        all = all && l.pass;
        std::cout << "criterion " << id << ": " << (l.pass ? "PASS" : "FAIL") << " | " << l.detail << " | "
                  << fmt(l.seconds) << " s";
        if (l.limit > 0) std::cout << " (limit " << fmt(l.limit) << " s)";
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
