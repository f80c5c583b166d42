#include "oracles.hpp"

#include "brd/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace brd;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "brd");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fx(const char* name) { return oracle::fixture(name); }

}  // namespace

TEST_CASE("check")
{
    const Run bad = run({"check", "--family", fx("tf.json"), "--structure", fx("k3.json"), "--no-timestamp"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("not a member: embeds forbidden[0]") != std::string::npos);
    const Run ok = run({"check", "--family", fx("tf.json"), "--structure", fx("p4.json"), "--no-timestamp"});
    CHECK(ok.code == 0);
    CHECK(Json::parse(ok.out)["result"]["member"] == true);
}

TEST_CASE("envelope close on R4")
{
    const Run r = run({"envelope", "close", "--family", fx("g0.json"), "--prefix", fx("r4.json"), "--levels", "2,3",
                       "--no-timestamp"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["result"]["closure"] == Json::array({0, 2, 3}));
}

TEST_CASE("gen then verify-dense")
{
    const std::string path = (std::filesystem::temp_directory_path() / "brd_test_prefix.json").string();
    const Run g = run({"gen", "--family", fx("tf.json"), "--size", "8", "--seed", "0", "--out", path, "--no-timestamp"});
    REQUIRE(g.code == 0);
    const Run v = run({"verify-dense", "--family", fx("tf.json"), "--prefix", path, "--horizon", "2", "--no-timestamp"});
    REQUIRE(v.code == 0);
    const Json j = Json::parse(v.out);
    CHECK(j["result"]["unmet"] == 0);
    CHECK(j["result"]["violations"].empty());
    std::remove(path.c_str());
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"gen", "--family", fx("tf.json")}).code == 2);
    CHECK(run({"envelope", "close", "--family", fx("g0.json"), "--prefix", fx("r4.json")}).code == 2);
    CHECK(run({"gen", "--size", "x"}).code == 2);
}

TEST_CASE("reports and certificates")
{
    const Run ct = run({"ct", "--structure", fx("p4.json"), "--no-timestamp"});
    REQUIRE(ct.code == 0);
    const Json j = Json::parse(ct.out);
    CHECK(j["result"]["c"] == Json::array({"", "1", "01", "101"}));
    CHECK(j["certificates"]["round_trip"] == true);
    CHECK(j.contains("inputs_digest"));
    CHECK_FALSE(j.contains("timestamp"));
    CHECK(Json::parse(run({"ct", "--structure", fx("p4.json")}).out).contains("timestamp"));

    const Run am = run({"agemap", "--family", fx("tf.json"), "--prefix", fx("p4.json"), "--map", fx("agemap_false.json"),
                        "--no-timestamp"});
    REQUIRE(am.code == 0);
    const Json a = Json::parse(am.out);
    CHECK(a["result"]["is_age_map"] == false);
    CHECK(a["certificates"]["witness_source_in"] == false);
    CHECK(a["certificates"]["witness_target_in"] == true);

    const Run def = run({"envelope", "check", "--family", fx("g0.json"), "--prefix", fx("r4.json"), "--levels",
                         "0,2,3", "--mode", "definitional", "--no-timestamp"});
    REQUIRE(def.code == 0);
    CHECK(Json::parse(def.out)["certificates"]["replay_ok"] == true);

    const Run in = run({"envelope", "interior", "--family", fx("g0.json"), "--prefix", fx("r4.json"), "--levels",
                        "0,2,3", "--no-timestamp"});
    CHECK(Json::parse(in.out)["result"]["interior"] == Json::array({3, 2}));

    const Run b = run({"bound", "--family", fx("g0.json"), "--structure", fx("e2.json"), "--envelope-bound", "3",
                       "--no-timestamp"});
    CHECK(Json::parse(b.out)["result"]["ell"] == 11);
}

TEST_CASE("experiment is identical across job counts")
{
    const std::string path = (std::filesystem::temp_directory_path() / "brd_test_prefix2.json").string();
    REQUIRE(run({"gen", "--family", fx("tf.json"), "--size", "20", "--out", path}).code == 0);
    std::vector<std::string> base{"experiment", "--family", fx("tf.json"), "--prefix", path,     "--structure",
                                  fx("v1.json"), "--window", "3",           "--budget",  "40", "--no-timestamp"};
    auto j1 = base;
    j1.insert(j1.end(), {"--jobs", "1"});
    auto j8 = base;
    j8.insert(j8.end(), {"--jobs", "8"});
    const Run a = run(j1);
    const Run b = run(j8);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out).contains("disclaimer"));
    std::remove(path.c_str());
}
