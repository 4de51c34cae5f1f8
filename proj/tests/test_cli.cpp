#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "commands.hpp"

using namespace coho::cli;

namespace {
std::string source(const std::string& rel) { return std::string(COHOMOLAB_SOURCE_DIR) + "/" + rel; }
}

TEST_SUITE("cli") {

TEST_CASE("bundled scenarios pass")
{
    for (const char* s : {"scenarios/massey.json", "scenarios/dickson-p3.json", "scenarios/pc.json"}) {
        auto r = run_scenario(source(s), {});
        CAPTURE(s);
        CHECK(r.code == Exit::pass);
        CHECK(r.report["pass"] == true);
        CHECK(r.report["schema_version"] == kSchemaVersion);
    }
}

TEST_CASE("scenario reports are deterministic")
{
    auto a = run_scenario(source("scenarios/massey.json"), {});
    auto b = run_scenario(source("scenarios/massey.json"), {});
    CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("malformed scenario exits with 2")
{
    const char* path = "cli_bad_scenario.json";
    std::ofstream(path) << "{\"steps\": [";
    CHECK(run_scenario(path, {}).code == Exit::input_error);
    std::ofstream(path) << "{\"steps\": [{\"name\": \"x\", \"args\": [\"chern\"]}]}";
    CHECK(run_scenario(path, {}).code == Exit::input_error);
    std::remove(path);
}

TEST_CASE("failed expectation exits with 1")
{
    const char* path = "cli_wrong_scenario.json";
    std::ofstream(path) << R"({"name": "wrong", "steps": [{"name": "pc", "args": ["chern", "pc", "--group",
        "{\"family\":\"cyclic\",\"m\":9}", "--p", "3"], "expect": [{"path": "/pc", "equals": 4, "provenance": "derived"}]}]})";
    auto r = run_scenario(path, {});
    CHECK(r.code == Exit::expectation_failed);
    CHECK(r.report["steps"][0]["expectations"][0]["actual"] == 2);
    std::remove(path);
}

TEST_CASE("subcommands")
{
    auto r = run({"chern", "pc", "--group", R"({"family":"P2","p":3})", "--p", "3"});
    CHECK(r.code == Exit::pass);
    CHECK(r.report["pc"] == 6);
    CHECK(r.report["per_class"].size() == 5);

    auto d = run({"davis", "chi", "--k", "triangle"});
    CHECK(d.report["chi_orbifold"] == "1/8");

    auto f = run({"ringmodel", "fixed", "--action", "D8-det", "--max-degree", "24"});
    CHECK(f.code == Exit::pass);
    auto g = run({"ringmodel", "fixed", "--action", "D8", "--max-degree", "24"});
    CHECK(g.code == Exit::expectation_failed);
}

TEST_CASE("input errors and resource limits")
{
    CHECK(run({"chern", "pc", "--group", R"({"family":"nope"})", "--p", "3"}).code == Exit::input_error);
    CHECK(run({"chern", "pc", "--group", R"({"family":"P2","p":3})", "--p", "4"}).code == Exit::input_error);
    CHECK(run({"bogus"}).code == Exit::input_error);
    CHECK(run({"davis", "build", "--k", "boundary:2"}).code == Exit::input_error);
    CHECK(run({"--max-cells", "100", "cohomology", "--group", R"({"family":"P2","p":3})", "--p", "3"}).code ==
          Exit::resource_limit);
}

TEST_CASE("group specs")
{
    auto g = group_from_json(json::parse(R"({"family":"product","factors":[{"family":"cyclic","m":3},{"family":"cyclic","m":2}]})"));
    CHECK(g->order() == 6);
    CHECK_THROWS_AS(load_json_arg("{not json"), InputError);
}

}
