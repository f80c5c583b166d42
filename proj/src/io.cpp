#include "brd/io.hpp"

#include "brd/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace brd {

namespace {

template <class T>
T get_field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("bad field \"") + key + "\": " + e.what());
    }
}

Value to_value(long long v, const char* what)
{
    if (v < 0 || v > 255) throw Error(ErrorKind::Parse, std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<Value>(v);
}

}  // namespace

Json language_to_json(const Language& lang)
{
    Json j;
    j["k"] = lang.k;
    Json flip = Json::array();
    for (Value v : lang.flip) flip.push_back(v);
    j["flip"] = flip;
    if (lang.unary_types != lang.k) j["unary_types"] = lang.unary_types;
    return j;
}

Language language_from_json(const Json& j)
{
    const int k = get_field<int>(j, "k");
    std::vector<Value> flip;
    if (j.contains("flip")) {
        for (long long v : get_field<std::vector<long long>>(j, "flip")) flip.push_back(to_value(v, "flip value"));
    }
    const int unary_types = j.contains("unary_types") ? get_field<int>(j, "unary_types") : -1;
    return Language(k, std::move(flip), unary_types);
}

Json structure_to_json(const Structure& a)
{
    Json j = language_to_json(a.language());
    j["n"] = a.size();
    Json unary = Json::array();
    for (Value v : a.unary_values()) unary.push_back(v);
    j["unary"] = unary;
    Json rel = Json::array();
    for (std::size_t b = 0; b < a.size(); ++b) {
        for (std::size_t x = 0; x < b; ++x) {
            if (a.rel(x, b) != 0) rel.push_back(Json::array({x, b, a.rel(x, b)}));
        }
    }
    j["rel"] = rel;
    return j;
}

static Structure read_body(const Json& j, const Language& lang)
{
    const auto n = get_field<std::size_t>(j, "n");
    std::vector<Value> unary(n, 0);
    if (j.contains("unary")) {
        const auto u = get_field<std::vector<long long>>(j, "unary");
        if (u.size() != n) throw Error(ErrorKind::Parse, "\"unary\" has " + std::to_string(u.size()) + " entries, n = " + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i) unary[i] = to_value(u[i], "unary value");
    }
    std::vector<RelEntry> rel;
    if (j.contains("rel")) {
        for (const auto& e : get_field<std::vector<std::vector<long long>>>(j, "rel")) {
            if (e.size() != 3 || e[0] < 0 || e[1] < 0) throw Error(ErrorKind::Parse, "rel entries are [a, b, value]");
            rel.push_back({static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]), to_value(e[2], "relation value")});
        }
    }
    return validate_structure(lang, unary, rel);
}

Structure structure_from_json(const Json& j)
{
    return read_body(j, language_from_json(j));
}

Structure structure_from_json(const Json& j, const Language& lang)
{
    if (j.contains("k")) {
        Language own = language_from_json(j);
        if (!j.contains("unary_types")) own.unary_types = lang.unary_types;
        if (!(own == lang)) throw Error(ErrorKind::LanguageMismatch, "structure language differs from the family's");
    }
    return read_body(j, lang);
}

Json family_to_json(const ForbFamily& family)
{
    Json j;
    j["language"] = language_to_json(family.language());
    Json f = Json::array();
    for (const Structure& s : family.forbidden()) f.push_back(structure_to_json(s));
    j["forbidden"] = f;
    return j;
}

ForbFamily family_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("language")) throw Error(ErrorKind::Parse, "missing field \"language\"");
    Language lang = language_from_json(j.at("language"));
    std::vector<Structure> forbidden;
    if (j.contains("forbidden")) {
        if (!j.at("forbidden").is_array()) throw Error(ErrorKind::Parse, "\"forbidden\" must be an array");
        for (const Json& s : j.at("forbidden")) forbidden.push_back(structure_from_json(s, lang));
    }
    return ForbFamily(std::move(lang), std::move(forbidden));
}

Json prefix_to_json(const LimitPrefix& prefix)
{
    Json j = structure_to_json(prefix.structure());
    Json sched = Json::array();
    for (const ScheduleEntry& e : prefix.schedule()) {
        Json s;
        s["level"] = e.level;
        s["base"] = e.base;
        s["unary"] = e.unary;
        s["relations"] = node_to_string(e.relations);
        if (e.demand) s["demand"] = true;
        sched.push_back(s);
    }
    j["schedule"] = sched;
    return j;
}

LimitPrefix prefix_from_json(const ForbFamily& family, const Json& j)
{
    Structure s = structure_from_json(j, family.language());
    std::vector<ScheduleEntry> schedule;
    if (j.contains("schedule")) {
        for (const Json& e : j.at("schedule")) {
            ScheduleEntry entry;
            entry.level = get_field<std::size_t>(e, "level");
            entry.base = get_field<std::size_t>(e, "base");
            entry.unary = to_value(get_field<long long>(e, "unary"), "unary value");
            entry.relations = node_from_string(get_field<std::string>(e, "relations"), family.language().k);
            entry.demand = e.contains("demand") && get_field<bool>(e, "demand");
            schedule.push_back(std::move(entry));
        }
    }
    return LimitPrefix(family, std::move(s), std::move(schedule));
}

Json tree_map_to_json(const TreeMap& f)
{
    Json out = Json::array();
    for (std::size_t m = 0; m < f.depth(); ++m) {
        for (std::size_t i = 0; i < f.level[m].size(); ++i) {
            out.push_back(Json::array({node_to_string(node_at(i, m, f.k)), node_to_string(f.level[m][i])}));
        }
    }
    return out;
}

Json load_json_file(const std::string& path, std::string* digest_input)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (digest_input) {
        *digest_input += text;
        digest_input->push_back('\0');
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace brd
