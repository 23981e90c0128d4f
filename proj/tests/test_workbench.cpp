#include <doctest.h>

#include <set>

#include "pdpair/constructions.hpp"
#include "pdpair/scenarios.hpp"

using namespace pdpair;

TEST_SUITE("workbench_cli") {

TEST_CASE("every registered scenario has tagged expectations") {
    std::set<std::string> tags;
    for (const auto& name : scenario_names()) {
        auto f = scenario_fixture(name);
        REQUIRE(f.contains("variants"));
        CHECK(!f.at("variants").empty());
        for (const auto& [variant, body] : f.at("variants").items()) {
            CAPTURE(name);
            CAPTURE(variant);
            CHECK(!body.at("expected").empty());
            for (const auto& [key, entry] : body.at("expected").items()) {
                CHECK(entry.contains("value"));
                tags.insert(entry.at("provenance").get<std::string>());
            }
        }
    }
    CHECK(scenario_names().size() == 6);
    CHECK(tags == std::set<std::string>{"DERIVED", "PAPER"});
}

TEST_CASE("scenario parameters are validated") {
    CHECK_THROWS_AS(run_scenario("nope"), std::invalid_argument);
    ScenarioOptions o;
    o.n = 2;
    CHECK_THROWS_AS(run_scenario("theorem-a", o), std::invalid_argument);
    o.n = 3;
    o.large = true;
    CHECK_THROWS_AS(run_scenario("theorem-a", o), std::invalid_argument);
    o.n = 1;
    CHECK_THROWS_AS(run_scenario("covering", o), std::invalid_argument);
}

TEST_CASE("scenario output is reproducible") {
    auto a = run_scenario("covering");
    auto b = run_scenario("covering");
    CHECK(a.match());
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(!a.to_json().contains("timings"));
    CHECK(a.to_json(true).contains("timings"));
}

TEST_CASE("constructions used by the command line") {
    auto torus = product(boundary_sphere(2), boundary_sphere(2));
    CHECK(torus.count(2) == 18);
    auto pair = acyclic_cone_pair(1);
    CHECK(pair.sub.components().size() == 2);
    CHECK(pair.total.vertex_count() == pair.sub.vertex_count());
    CHECK(integer_homology(pair.total)[0] == HomologyGroup{1, {}});
}

}  // TEST_SUITE
