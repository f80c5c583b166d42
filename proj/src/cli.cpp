#include "brd/cli.hpp"

#include "brd/degrees.hpp"
#include "brd/error.hpp"
#include "brd/io.hpp"
#include "brd/nice.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace brd {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string prefix;
    std::string structure;
    std::string map;
    std::string out;
    std::string coloring = "canonical";
    std::string mode = "combinatorial";
    std::vector<std::size_t> levels;
    std::uint64_t seed = 0;
    std::size_t size = 0;
    std::size_t horizon = 0;
    std::size_t window = 0;
    std::size_t budget = 0;
    std::optional<std::uint64_t> envelope_bound;
    unsigned jobs = 1;
    bool pretty = false;
    bool no_timestamp = false;
};

// Per-invocation state: options, the bytes of every input read, and the report.
class Session {
public:
    Session(const Options& o, std::istream& in) : opt(o), in_(in) {}

    const Options& opt;
    Json args = Json::object();
    Json warnings = Json::array();

    Json load(const std::string& path, const char* flag)
    {
        if (path.empty()) throw UsageError(std::string("missing --") + flag);
        if (path == "-") {
            std::stringstream buf;
            buf << in_.rdbuf();
            digest_ += buf.str();
            digest_.push_back('\0');
            try {
                return Json::parse(buf.str());
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::Parse, std::string("stdin: ") + e.what());
            }
        }
        return load_json_file(path, &digest_);
    }

    ForbFamily family()
    {
        ForbFamily f = family_from_json(load(opt.family, "family"));
        for (const auto& w : f.warnings()) warnings.push_back(w);
        return f;
    }

    LimitPrefix prefix(const ForbFamily& f)
    {
        Json j = load(opt.prefix, "prefix");
        // A gen report can be piped in directly.
        if (j.is_object() && j.contains("result") && j["result"].contains("prefix")) j = j["result"]["prefix"];
        return prefix_from_json(f, j);
    }

    Structure structure(const ForbFamily* f)
    {
        const Json j = load(opt.structure, "structure");
        return f ? structure_from_json(j, f->language()) : structure_from_json(j);
    }

    std::string digest() const { return fnv1a64(digest_); }

private:
    std::istream& in_;
    std::string digest_;
};

std::size_t require(std::size_t v, const char* flag)
{
    if (v == 0) throw UsageError(std::string("missing or zero --") + flag);
    return v;
}

Json verdict_json(const AgeMapVerdict& v)
{
    Json j;
    j["is_age_map"] = v.is_age_map;
    j["reason"] = v.reason;
    j["source_in"] = v.source_in;
    j["target_in"] = v.target_in;
    j["checked"] = v.checked;
    if (v.witness) {
        Json labels = Json::array();
        for (const Node& n : v.witness->labels) labels.push_back(node_to_string(n));
        j["witness"] = {{"b", structure_to_json(v.witness->b)}, {"labels", labels}};
    }
    return j;
}

Json nodes_json(const std::vector<Node>& nodes)
{
    Json j = Json::array();
    for (const Node& n : nodes) j.push_back(node_to_string(n));
    return j;
}

Json crit_json(const CritReport& r)
{
    Json j;
    j["levels"] = r.levels;
    j["crit"] = r.crit();
    j["sp"] = r.sp;
    Json ac = Json::array();
    for (const AgeChange& a : r.ac) ac.push_back({{"level", a.level}, {"verdict", verdict_json(a.verdict)}});
    j["ac"] = ac;
    j["start"] = r.start;
    return j;
}

void write_file(const std::string& path, const Json& j)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
    f << j.dump(2) << "\n";
}

struct Outcome {
    Json result = Json::object();
    Json certificates = Json::object();
    std::optional<std::string> disclaimer;
};

Outcome cmd_check(Session& s)
{
    const ForbFamily f = s.family();
    const Structure a = s.structure(&f);
    if (auto bad = first_forbidden_copy(f, a)) {
        throw Error(ErrorKind::NotInClass, "not a member: embeds forbidden[" + std::to_string(*bad) + "]");
    }
    Outcome o;
    o.result["member"] = true;
    o.result["n"] = a.size();
    return o;
}

Outcome cmd_gen(Session& s)
{
    const ForbFamily f = s.family();
    const std::size_t n = require(s.opt.size, "size");
    s.args["size"] = n;
    s.args["seed"] = s.opt.seed;
    const LimitPrefix p = generate_prefix(f, n, s.opt.seed);
    Outcome o;
    o.result["size"] = p.size();
    o.result["seed"] = s.opt.seed;
    o.result["schedule_length"] = p.schedule().size();
    const Json pj = prefix_to_json(p);
    o.result["digest"] = fnv1a64(pj.dump());
    if (s.opt.out.empty()) o.result["prefix"] = pj;
    else write_file(s.opt.out, pj);
    return o;
}

Outcome cmd_verify_dense(Session& s)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    s.args["horizon"] = s.opt.horizon;
    const DensityReport r = verify_left_dense(p, s.opt.horizon);
    Outcome o;
    o.result["horizon"] = r.horizon;
    o.result["met"] = r.met;
    o.result["unmet"] = r.unmet;
    o.result["violations"] = r.violations;
    Json items = Json::array();
    for (const DensityItem& it : r.items) {
        Json j;
        j["base"] = it.base;
        j["unary"] = it.ext.unary;
        j["relations"] = node_to_string(it.ext.relations);
        j["witness"] = it.witness ? Json(*it.witness) : Json(nullptr);
        items.push_back(j);
    }
    o.certificates["items"] = items;
    return o;
}

Outcome cmd_ct(Session& s)
{
    const Structure a = s.structure(nullptr);
    const CodingTree ct = coding_tree_of(a);
    Outcome o;
    o.result["c"] = nodes_json(ct.c);
    o.result["u"] = ct.u;
    o.certificates["round_trip"] = structure_of(ct) == a;
    return o;
}

Outcome cmd_agemap(Session& s)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    const Json m = s.load(s.opt.map, "map");
    const int k = f.language().k;
    // The source side may carry its own context; the target is read against the prefix.
    std::optional<Structure> context;
    if (m.contains("source_context")) context = structure_from_json(m["source_context"], f.language());
    AgedSide src{context ? &*context : &p.structure(), {}};
    AgedSide dst{&p.structure(), {}};
    if (!m.contains("source") || !m.contains("target")) throw Error(ErrorKind::Parse, "map needs \"source\" and \"target\"");
    for (const auto& t : m["source"]) src.nodes.push_back(node_from_string(t.get<std::string>(), k));
    for (const auto& t : m["target"]) dst.nodes.push_back(node_from_string(t.get<std::string>(), k));
    const AgeMapVerdict v = check_age_map(f, src, dst);
    Outcome o;
    o.result = verdict_json(v);
    if (v.witness) {
        // Replay: the witness realizes differently on the two sides.
        std::vector<Node> image;
        for (const Node& n : v.witness->labels) {
            for (std::size_t i = 0; i < src.nodes.size(); ++i) {
                if (src.nodes[i] == n) {
                    image.push_back(dst.nodes[i]);
                    break;
                }
            }
        }
        o.certificates["witness_source_in"] = in_class(f, v.witness->b, v.witness->labels, *src.context);
        o.certificates["witness_target_in"] = in_class(f, v.witness->b, image, p.structure());
    }
    return o;
}

Outcome cmd_aemb(Session& s)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    const Structure a = s.structure(&f);
    const AgedEmbedding e = find_aged_embedding(a, p);
    const AgedCheck check = check_aged_embedding(e.f, a, p.structure(), f);
    Outcome o;
    o.result["induced"] = e.induced;
    o.result["node_map"] = tree_map_to_json(e.f);
    o.certificates["is_aged_embedding"] = check.ok;
    if (!check.ok) o.certificates["failure"] = check.failure;
    return o;
}

std::vector<std::size_t> levels_arg(Session& s)
{
    if (s.opt.levels.empty()) throw UsageError("missing --levels");
    s.args["levels"] = s.opt.levels;
    return normalize_levels(s.opt.levels);
}

Outcome cmd_envelope(Session& s, const std::string& action)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    const LevelSet levels = levels_arg(s);
    for (std::size_t v : levels) {
        if (v >= p.size()) throw Error(ErrorKind::IndexOutOfRange, "level " + std::to_string(v) + " beyond the prefix");
    }
    Outcome o;
    if (action == "check") {
        EnvelopeMode mode;
        if (s.opt.mode == "combinatorial") mode = EnvelopeMode::Combinatorial;
        else if (s.opt.mode == "definitional") mode = EnvelopeMode::Definitional;
        else throw UsageError("--mode must be combinatorial or definitional");
        s.args["mode"] = s.opt.mode;
        const EnvelopeVerdict v = check_envelope(levels, p, mode);
        o.result["is_envelope"] = v.is_envelope;
        o.result["reason"] = v.reason;
        if (v.construction) {
            o.certificates["construction"] = tree_map_to_json(*v.construction);
            const Structure ks = induced_substructure(p.structure(), levels);
            const AgedCheck replay = check_aged_embedding(*v.construction, ks, p.structure(), f);
            o.certificates["replay_ok"] = replay.ok && replay.induced == levels;
        }
        o.certificates["crit"] = crit_json(crit(levels, p));
    } else if (action == "close") {
        const LevelSet c = closure(levels, p);
        o.result["closure"] = c;
        o.certificates["is_envelope"] = is_envelope(c, p);
    } else {
        const auto in = interior(levels, p);
        o.result["interior"] = in;
        o.certificates["closure_of_interior"] = closure(normalize_levels(in), p);
    }
    return o;
}

Outcome cmd_crit(Session& s)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    const LevelSet levels = levels_arg(s);
    const CritReport r = crit(levels, p);
    Outcome o;
    o.result = crit_json(r);
    o.result.erase("ac");
    Json ac = Json::array();
    for (const AgeChange& a : r.ac) ac.push_back(a.level);
    o.result["ac"] = ac;
    Json wit = Json::array();
    for (const AgeChange& a : r.ac) wit.push_back({{"level", a.level}, {"verdict", verdict_json(a.verdict)}});
    o.certificates["ac_witnesses"] = wit;
    o.certificates["bound"] = crit_bound(levels.size(), f);
    return o;
}

Outcome cmd_nice(Session& s)
{
    const ForbFamily f = s.family();
    LimitPrefix p = s.prefix(f);
    const std::size_t horizon = require(s.opt.horizon, "horizon");
    const std::size_t budget = s.opt.budget ? s.opt.budget : std::size_t{4096};
    s.args["horizon"] = horizon;
    s.args["budget"] = budget;
    const YStructure y = build_y(p, horizon);
    const NiceEmbedding eta = nice_embedding(y, p, budget);
    Outcome o;
    o.result["horizon"] = horizon;
    o.result["y_size"] = y.points.size();
    o.result["eta"] = eta.eta;
    Json kpos = Json::array();
    for (std::size_t a = 0; a < horizon; ++a) kpos.push_back(eta.eta[y.k_position[a]]);
    o.result["k_levels"] = kpos;
    o.result["demand_levels"] = eta.demand_levels;
    o.result["prefix_size"] = p.size();
    o.certificates["is_embedding"] = is_embedding(y.structure, p.structure(), eta.eta);
    o.certificates["clause_violations"] = nice_clause_violations(eta, p);
    o.certificates["left_violations"] = nice_left_violations(eta, p);
    if (!s.opt.out.empty()) {
        Json j;
        j["eta"] = eta.eta;
        j["k_levels"] = kpos;
        j["prefix"] = prefix_to_json(p);
        write_file(s.opt.out, j);
    }
    return o;
}

Outcome cmd_bound(Session& s)
{
    const ForbFamily f = s.family();
    const Structure a = s.structure(&f);
    if (s.opt.envelope_bound) s.args["envelope_bound"] = *s.opt.envelope_bound;
    const DegreeBoundReport r = degree_bound(a, f, s.opt.envelope_bound);
    Outcome o;
    o.result["d"] = r.d;
    o.result["ell"] = r.ell;
    o.result["census"] = r.census;
    o.certificates["envelope_size_bound"] = envelope_size_bound(a.size(), f);
    o.certificates["crit_bound"] = crit_bound(a.size(), f);
    return o;
}

Coloring coloring_arg(Session& s, const LimitPrefix& p)
{
    const std::string& c = s.opt.coloring;
    s.args["coloring"] = c;
    if (c == "canonical") return canonical_coloring(p);
    if (c == "constant") return constant_coloring();
    if (c == "edge") return edge_coloring(p);
    const Json j = s.load(c, "coloring");
    auto table = std::make_shared<std::map<std::vector<std::size_t>, std::string>>();
    const std::string fallback = j.contains("default") ? j["default"].get<std::string>() : std::string("default");
    if (j.contains("colors")) {
        for (const auto& e : j["colors"]) {
            (*table)[e.at(0).get<std::vector<std::size_t>>()] = e.at(1).get<std::string>();
        }
    }
    return [table, fallback](const std::vector<std::size_t>& v) {
        auto it = table->find(v);
        return it == table->end() ? fallback : it->second;
    };
}

Outcome cmd_experiment(Session& s)
{
    const ForbFamily f = s.family();
    const LimitPrefix p = s.prefix(f);
    const Structure a = s.structure(&f);
    const std::size_t window = require(s.opt.window, "window");
    const std::size_t budget = s.opt.budget ? s.opt.budget : std::size_t{1000};
    s.args["window"] = window;
    s.args["budget"] = budget;
    const Coloring chi = coloring_arg(s, p);
    const ColoringExperiment r = run_coloring_experiment(p, a, chi, window, budget, s.opt.jobs);
    Outcome o;
    o.result["window"] = r.window;
    o.result["explored"] = r.explored;
    o.result["budget_exhausted"] = r.budget_exhausted;
    o.result["colors"] = r.colors;
    o.result["eta"] = r.eta;
    o.result["palette"] = r.palette;
    if (!r.eta.empty()) o.certificates["recount"] = count_colors(p, a, chi, window, r.eta);
    o.disclaimer =
        "Heuristic probe over finitely many copies of a finite window. The color count is an upper estimate for this "
        "one coloring and is not a big Ramsey degree.";
    return o;
}

std::string utc_now()
{
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Big Ramsey degree combinatorics for Forb(F) classes"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--family", opt.family, "family file");
        sub->add_option("--prefix", opt.prefix, "prefix file (- for stdin)");
        sub->add_option("--structure", opt.structure, "structure file");
        sub->add_option("--levels", opt.levels, "levels a,b,c")->delimiter(',');
        sub->add_option("--seed", opt.seed, "generator seed");
        sub->add_option("--size", opt.size, "prefix size");
        sub->add_option("--horizon", opt.horizon, "horizon");
        sub->add_option("--window", opt.window, "window size");
        sub->add_option("--budget", opt.budget, "search budget");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_option("--out", opt.out, "output file");
        sub->add_option("--map", opt.map, "age-map file");
        sub->add_option("--mode", opt.mode, "combinatorial or definitional");
        sub->add_option("--coloring", opt.coloring, "canonical, constant, edge or a file");
        sub->add_option("--envelope-bound", opt.envelope_bound, "override D");
        sub->add_flag("--pretty", opt.pretty, "indented output");
        sub->add_flag("--no-timestamp", opt.no_timestamp, "omit the timestamp");
    };

    std::string command;
    std::string action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        CLI::App* sub = parent->add_subcommand(name, help);
        common(sub);
        sub->callback([&command, &action, &app, sub, name] {
            command = sub->get_parent() == &app ? name : sub->get_parent()->get_name() + " " + name;
            action = name;
        });
        return sub;
    };
    leaf(&app, "check", "membership in K");
    leaf(&app, "gen", "generate a left-dense prefix");
    leaf(&app, "verify-dense", "check left density up to a horizon");
    leaf(&app, "ct", "coding tree of a structure");
    leaf(&app, "agemap", "decide an age map");
    CLI::App* aemb = app.add_subcommand("aemb", "aged embeddings");
    aemb->require_subcommand(1);
    leaf(aemb, "find", "left-most aged embedding");
    CLI::App* env = app.add_subcommand("envelope", "envelopes");
    env->require_subcommand(1);
    leaf(env, "check", "is the level set an envelope");
    leaf(env, "close", "closure of a level set");
    leaf(env, "interior", "interior of an envelope");
    leaf(&app, "crit", "critical values");
    leaf(&app, "nice", "nice embedding of Y");
    leaf(&app, "bound", "degree bound");
    leaf(&app, "experiment", "finite coloring probe");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Session s(opt, std::cin);
    Json report;
    report["command"] = command;
    try {
        Outcome o;
        if (command == "check") o = cmd_check(s);
        else if (command == "gen") o = cmd_gen(s);
        else if (command == "verify-dense") o = cmd_verify_dense(s);
        else if (command == "ct") o = cmd_ct(s);
        else if (command == "agemap") o = cmd_agemap(s);
        else if (command == "aemb find") o = cmd_aemb(s);
        else if (command.rfind("envelope ", 0) == 0) o = cmd_envelope(s, action);
        else if (command == "crit") o = cmd_crit(s);
        else if (command == "nice") o = cmd_nice(s);
        else if (command == "bound") o = cmd_bound(s);
        else o = cmd_experiment(s);
        report["arguments"] = s.args;
        report["inputs_digest"] = s.digest();
        report["result"] = o.result;
        report["certificates"] = o.certificates;
        report["warnings"] = s.warnings;
        if (o.disclaimer) report["disclaimer"] = *o.disclaimer;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        Json diag;
        diag["command"] = command;
        diag["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        out << diag.dump(opt.pretty ? 2 : -1) << "\n";
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (!opt.no_timestamp) report["timestamp"] = utc_now();
    out << report.dump(opt.pretty ? 2 : -1) << "\n";
    return 0;
}

int run_cli(int argc, const char* const* argv)
{
    return run_cli(argc, argv, std::cout, std::cerr);
}

}  // namespace brd
