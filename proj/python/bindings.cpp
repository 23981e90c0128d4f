#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdpair/constructions.hpp"
#include "pdpair/scenarios.hpp"

namespace py = pybind11;
using namespace pdpair;

namespace {

EngineOptions options(std::size_t max_cosets) {
    EngineOptions o;
    o.max_cosets = max_cosets;
    return o;
}

std::string homology_json(const std::string& pair_text, bool relative, const std::string& system_text) {
    auto pair = pair_from_json(parse_json_text(pair_text));
    Connection conn = Connection::trivial(pair.total);
    if (!system_text.empty()) {
        auto p = presentation(pair.total);
        conn = Connection::from_local_system(pair.total, p, local_system_from_json(parse_json_text(system_text), p));
    }
    TwistedComplex t(pair, conn, relative);
    Json out = Json::array();
    for (int p = 0; p <= t.dimension(); ++p) out.push_back(homology_to_json(t.homology(p)));
    return out.dump();
}

std::string orientation_systems_json(const std::string& complex_text) {
    auto c = complex_from_json(parse_json_text(complex_text));
    Json out = Json::array();
    for (const auto& s : orientation_systems(presentation(c))) out.push_back(local_system_to_json(s));
    return out.dump();
}

std::string verify_pair_json(const std::string& text, std::size_t max_cosets) {
    DualityEngine engine(options(max_cosets));
    return engine.verify_pair(pair_from_json(parse_json_text(text))).to_json().dump();
}

std::string verify_triad_json(const std::string& text, std::size_t max_cosets) {
    DualityEngine engine(options(max_cosets));
    return engine.verify_triad(triad_from_json(parse_json_text(text))).to_json().dump();
}

std::string thom_json(const std::string& text, int k) {
    DualityEngine engine;
    auto r = engine.find_thom_class(pair_from_json(parse_json_text(text)), k);
    return r ? r->to_json().dump() : "null";
}

std::string scenario_json(const std::string& name, int n, bool large) {
    ScenarioOptions o;
    o.n = n;
    o.large = large;
    return run_scenario(name, o).to_json().dump();
}

std::string construct_json(const std::string& op, const std::vector<std::string>& inputs) {
    auto pair_at = [&](std::size_t i) { return pair_from_json(parse_json_text(inputs.at(i))); };
    if (op == "cone") return pair_to_json(cone(pair_at(0).total)).dump();
    if (op == "product") return pair_to_json(product_pair(pair_at(0), pair_at(1))).dump();
    if (op == "double") return pair_to_json(double_pair(pair_at(0)).pair).dump();
    if (op == "puncture") return pair_to_json(puncture(pair_at(0).total)).dump();
    throw std::invalid_argument("unknown construction " + op);
}

std::string builtin_json(const std::string& name, int n) {
    if (name == "full_simplex") return complex_to_json(full_simplex(n)).dump();
    if (name == "boundary_sphere") return complex_to_json(boundary_sphere(n)).dump();
    if (name == "projective_plane") return complex_to_json(projective_plane()).dump();
    if (name == "torus") return complex_to_json(torus()).dump();
    if (name == "klein_bottle") return complex_to_json(klein_bottle()).dump();
    if (name == "moebius_band") return pair_to_json(moebius_band()).dump();
    if (name == "poincare_sphere") return complex_to_json(poincare_sphere()).dump();
    if (name == "projective_space3") return complex_to_json(projective_space3()).dump();
    throw std::invalid_argument("unknown complex " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "JSON-level bindings of the pdpair library";
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    m.def("homology", &homology_json, py::arg("pair"), py::arg("relative") = false, py::arg("system") = "");
    m.def("orientation_systems", &orientation_systems_json, py::arg("complex"));
    m.def("verify_pair", &verify_pair_json, py::arg("pair"), py::arg("max_cosets") = 1000000);
    m.def("verify_triad", &verify_triad_json, py::arg("triad"), py::arg("max_cosets") = 1000000);
    m.def("find_thom_class", &thom_json, py::arg("pair"), py::arg("k"));
    m.def("run_scenario", &scenario_json, py::arg("name"), py::arg("n") = 0, py::arg("large") = false);
    m.def("scenario_names", &scenario_names);
    m.def("construct", &construct_json, py::arg("op"), py::arg("inputs"));
    m.def("builtin", &builtin_json, py::arg("name"), py::arg("n") = 0);
}
