#pragma once

#include <string>
#include <vector>

#include "pdpair/duality.hpp"

namespace pdpair {

struct ScenarioStep {
    std::string name;
    double seconds = 0;
};

struct ScenarioRun {
    std::string name;
    std::string variant;
    Json parameters;
    Json observed = Json::object();
    Json expected = Json::object();  // key -> {"value", "provenance"}
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;
    std::vector<ScenarioStep> steps;

    bool match() const { return mismatches.empty(); }
    /// Timings are left out unless asked for, so the output is reproducible.
    Json to_json(bool timings = false) const;
    std::string summary(bool timings = false) const;
};

struct ScenarioOptions {
    EngineOptions engine;
    int n = 0;  // 0: scenario default
    bool large = false;
};

const std::vector<std::string>& scenario_names();
/// Fixture entry for one scenario, from the file compiled into the library.
Json scenario_fixture(const std::string& name);
/// Throws std::invalid_argument on an unknown name or invalid parameters.
ScenarioRun run_scenario(const std::string& name, const ScenarioOptions& options = {});

/// Acyclic 3-complex with perfect fundamental group of order 120.
SimplicialComplex punctured_poincare_sphere();
/// (cone(A x S^{n-1}), A x S^{n-1}) for the punctured Poincare sphere A.
SimplicialPair acyclic_cone_pair(int n);
/// Pair and system combinations exercised by the kunneth scenario.
std::vector<std::pair<KunnethFactor, KunnethFactor>> kunneth_corpus();

}  // namespace pdpair
