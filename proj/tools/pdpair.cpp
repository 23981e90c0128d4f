#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pdpair/constructions.hpp"
#include "pdpair/cover.hpp"
#include "pdpair/scenarios.hpp"

using namespace pdpair;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, parse = 2, negative = 3, undecided = 4, mismatch = 5 };

struct Global {
    bool summary = false;
    bool timings = false;
    std::uint64_t seed = 0;
    std::size_t max_cosets = 1000000;
    bool large = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EngineOptions engine_options(const Global& g) {
    EngineOptions o;
    o.max_cosets = g.max_cosets;
    return o;
}

Json envelope(const Global& g, const std::string& command, const std::vector<std::string>& args) {
    return Json{{"command", command}, {"arguments", args}, {"version", kVersion}, {"seed", g.seed}};
}

int exit_for(Verdict v) { return v == Verdict::holds ? ok : v == Verdict::fails ? negative : undecided; }

void emit(const Global& g, const Json& j, const std::string& summary) {
    if (g.summary) {
        std::cout << summary;
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

void write_or_print(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string homology_line(int p, const HomologyGroup& h) { return "H_" + std::to_string(p) + " = " + h.to_string() + "\n"; }

int cmd_homology(const Global& g, const std::string& file, const std::string& system_file, bool relative,
                 bool cochains, int from, int to) {
    auto pair = pair_from_json(read_json_file(file));
    Connection conn = Connection::trivial(pair.total);
    std::string label = "integer";
    if (!system_file.empty()) {
        auto p = presentation(pair.total);
        auto s = local_system_from_json(read_json_file(system_file), p);
        conn = Connection::from_local_system(pair.total, p, s);
        label = "rank " + std::to_string(s.rank) + " system from " + system_file;
    }
    TwistedComplex t(pair, conn, relative, cochains ? Variance::cochains : Variance::chains);
    int hi = to < 0 ? t.dimension() : std::min(to, t.dimension());
    Json groups = Json::object();
    std::string text = std::string(cochains ? "cohomology" : "homology") + " with " + label + " coefficients" +
                       (relative ? ", relative" : "") + "\n";
    for (int p = std::max(from, 0); p <= hi; ++p) {
        auto h = t.homology(p);
        groups[std::to_string(p)] = homology_to_json(h);
        text += homology_line(p, h);
    }
    Json j = envelope(g, "homology", {file});
    j["coefficients"] = label;
    j["relative"] = relative;
    j["variance"] = cochains ? "cochains" : "chains";
    j["groups"] = groups;
    emit(g, j, text);
    return ok;
}

int cmd_verify_pair(const Global& g, const std::string& file) {
    auto pair = pair_from_json(read_json_file(file));
    DualityEngine engine(engine_options(g));
    auto r = engine.verify_pair(pair);
    Json j = envelope(g, "verify-pair", {file});
    j["report"] = r.to_json();
    emit(g, j, r.summary());
    return exit_for(r.verdict);
}

int cmd_verify_triad(const Global& g, const std::string& file) {
    auto triad = triad_from_json(read_json_file(file));
    DualityEngine engine(engine_options(g));
    auto r = engine.verify_triad(triad);
    Json j = envelope(g, "verify-triad", {file});
    j["report"] = r.to_json();
    emit(g, j, r.summary());
    return exit_for(r.verdict);
}

int cmd_thom(const Global& g, const std::string& file, int degree) {
    auto pair = pair_from_json(read_json_file(file));
    DualityEngine engine(engine_options(g));
    Json results = Json::array();
    std::string text;
    Verdict best = Verdict::fails;
    int lo = degree < 0 ? 0 : degree, hi = degree < 0 ? pair.total.dimension() : degree;
    for (int k = lo; k <= hi; ++k) {
        auto r = engine.find_thom_class(pair, k);
        Json entry{{"degree", k}};
        entry["result"] = r ? r->to_json() : Json(nullptr);
        results.push_back(entry);
        Verdict v = r ? r->verdict : Verdict::fails;
        text += "k = " + std::to_string(k) + ": " + (r ? to_string(r->verdict) + " (" + r->orientation_system + ")" : "no candidate class") + "\n";
        if (v == Verdict::holds || (v == Verdict::undecided && best == Verdict::fails)) best = v;
    }
    Json j = envelope(g, "thom", {file});
    j["results"] = results;
    emit(g, j, text);
    return exit_for(best);
}

std::vector<Vertex> parse_identification(const std::string& spec, std::size_t n) {
    std::vector<Vertex> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v] = static_cast<Vertex>(v);
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("identification entries look like a:b");
        std::size_t a = std::stoul(item.substr(0, colon));
        if (a >= n) throw ParseError("identification vertex out of range");
        out[a] = static_cast<Vertex>(std::stoul(item.substr(colon + 1)));
    }
    return out;
}

std::optional<CosetTable> pick_table(const GroupPresentation& p, std::size_t index, std::size_t which) {
    std::size_t seen = 0;
    for (const auto& t : low_index_subgroups(p, index)) {
        if (t.degree == index && seen++ == which) return t;
    }
    return std::nullopt;
}

Json cover_json(const CoverPair& c, const GroupPresentation& p, const CosetTable& t) {
    Json j = pair_to_json(c.total);
    j["sheets"] = c.sheets;
    j["projection"] = c.projection.vertex_images;
    j["coset_table"] = coset_table_to_json(t);
    j["presentation"] = presentation_to_json(p);
    return j;
}

int cmd_construct(const Global&, const std::string& op, const std::vector<std::string>& inputs,
                  const std::string& output, const std::string& identify, std::size_t index, std::size_t which) {
    auto need = [&](std::size_t k) {
        if (inputs.size() != k) throw UsageError(op + " takes " + std::to_string(k) + " input file(s)");
    };
    Json out;
    if (op == "cone") {
        need(1);
        out = pair_to_json(cone(complex_from_json(read_json_file(inputs[0]))));
    } else if (op == "product") {
        need(2);
        out = pair_to_json(product_pair(pair_from_json(read_json_file(inputs[0])), pair_from_json(read_json_file(inputs[1]))));
    } else if (op == "double") {
        need(1);
        out = pair_to_json(double_pair(pair_from_json(read_json_file(inputs[0]))).pair);
    } else if (op == "puncture") {
        need(1);
        out = pair_to_json(puncture(complex_from_json(read_json_file(inputs[0]))));
    } else if (op == "glue") {
        need(2);
        auto a = pair_from_json(read_json_file(inputs[0]));
        auto b = pair_from_json(read_json_file(inputs[1]));
        out = complex_to_json(glue(a, b, parse_identification(identify, a.total.vertex_count())).complex);
    } else if (op == "cover") {
        need(1);
        auto pair = pair_from_json(read_json_file(inputs[0]));
        auto p = presentation(pair.total);
        auto t = pick_table(p, index, which);
        if (!t) throw UsageError("no subgroup of index " + std::to_string(index));
        out = cover_json(build_cover(pair, p, *t), p, *t);
    } else {
        throw UsageError("unknown construction " + op);
    }
    write_or_print(output, out);
    return ok;
}

int cmd_cover(const Global& g, const std::string& file, std::size_t index, std::size_t which, bool universal,
              const std::string& output) {
    auto pair = pair_from_json(read_json_file(file));
    auto p = presentation(pair.total);
    std::optional<CosetTable> t;
    if (universal) {
        t = todd_coxeter(p, {}, g.max_cosets);
    } else {
        t = pick_table(p, index, which);
    }
    if (!t) throw UsageError("no subgroup of index " + std::to_string(index));
    auto c = build_cover(pair, p, *t);
    Json j = cover_json(c, p, *t);
    j["euler_characteristic"] = c.total.total.euler_characteristic();
    write_or_print(output, j);
    return ok;
}

int cmd_scenario(const Global& g, const std::string& name, int n) {
    ScenarioOptions o;
    o.engine = engine_options(g);
    o.large = g.large;
    o.n = n;
    auto run = run_scenario(name, o);
    Json j = envelope(g, "scenario", {name});
    j["run"] = run.to_json(g.timings);
    emit(g, j, run.summary(g.timings));
    if (!run.match()) {
        for (const auto& m : run.mismatches) std::cerr << "mismatch: " << m << "\n";
        return mismatch;
    }
    return ok;
}

KunnethFactor factor_from(const std::string& file, const std::string& system_file) {
    auto pair = pair_from_json(read_json_file(file));
    if (system_file.empty()) return {pair, Connection::trivial(pair.total), file};
    auto p = presentation(pair.total);
    auto s = local_system_from_json(read_json_file(system_file), p);
    return {pair, Connection::from_local_system(pair.total, p, s), file + "/" + system_file};
}

int cmd_kunneth(const Global& g, const std::vector<std::string>& files, const std::string& sys_a,
                const std::string& sys_b) {
    std::vector<std::pair<KunnethFactor, KunnethFactor>> cases;
    if (files.empty()) {
        cases = kunneth_corpus();
    } else if (files.size() == 2) {
        cases.emplace_back(factor_from(files[0], sys_a), factor_from(files[1], sys_b));
    } else {
        throw UsageError("kunneth takes two files or none");
    }
    Json reports = Json::array();
    std::string text;
    bool all_ok = true;
    for (const auto& [a, b] : cases) {
        auto r = kunneth_check(a, b);
        reports.push_back(r.to_json());
        all_ok = all_ok && r.ok;
        text += r.label + ": " + (r.ok ? "ok" : "MISMATCH") + "\n";
        for (const auto& d : r.degrees) {
            text += "  " + homology_line(d.degree, d.computed).substr(0, homology_line(d.degree, d.computed).size() - 1) +
                    (d.match ? "" : "  predicted " + d.predicted.to_string()) + "\n";
        }
    }
    Json j = envelope(g, "kunneth", files);
    j["reports"] = reports;
    j["ok"] = all_ok;
    emit(g, j, text);
    return all_ok ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decides whether finite simplicial pairs satisfy Poincare duality."};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--summary", g.summary, "Print a human-readable table instead of JSON");
    app.add_flag("--timings", g.timings, "Include step timings in scenario output");
    app.add_option("--seed", g.seed, "Seed echoed into the report");
    app.add_option("--max-cosets", g.max_cosets, "Coset enumeration limit");
    app.add_flag("--large", g.large, "Allow the larger scenario variants");
    app.set_version_flag("--version", kVersion);

    std::string file, system_file, output = "-", identify, op, name;
    std::vector<std::string> files;
    bool relative = false, cochains = false, universal = false;
    int from = 0, to = -1, degree = -1, n = 0;
    std::size_t index = 2, which = 0;
    std::string sys_a, sys_b;

    auto* hom = app.add_subcommand("homology", "Twisted or integer (co)homology");
    hom->add_option("file", file, "Complex or pair file")->required();
    hom->add_option("--system", system_file, "Local system file");
    hom->add_flag("--relative", relative, "Homology relative to the subcomplex");
    hom->add_flag("--cochains", cochains, "Cohomology instead of homology");
    hom->add_option("--from", from, "Lowest degree");
    hom->add_option("--to", to, "Highest degree");

    auto* vp = app.add_subcommand("verify-pair", "Poincare pair verdict");
    vp->add_option("file", file, "Pair file")->required();

    auto* vt = app.add_subcommand("verify-triad", "Poincare triad verdict");
    vt->add_option("file", file, "Triad file")->required();

    auto* th = app.add_subcommand("thom", "Search for a Thom class");
    th->add_option("file", file, "Pair file")->required();
    th->add_option("--degree", degree, "Degree to search (default: all)");

    auto* co = app.add_subcommand("construct", "Build a complex: cone, product, double, glue, puncture, cover");
    co->add_option("op", op, "Construction")->required();
    co->add_option("inputs", files, "Input files");
    co->add_option("-o,--output", output, "Output file");
    co->add_option("--identify", identify, "Vertex identification a:b,... for glue");
    co->add_option("--index", index, "Subgroup index for cover");
    co->add_option("--table", which, "Which table of that index");

    auto* cv = app.add_subcommand("cover", "Finite cover from a subgroup of given index");
    cv->add_option("file", file, "Complex or pair file")->required();
    cv->add_option("--index", index, "Subgroup index");
    cv->add_option("--table", which, "Which table of that index");
    cv->add_flag("--universal", universal, "Universal cover (finite fundamental group)");
    cv->add_option("-o,--output", output, "Output file");

    auto* sc = app.add_subcommand("scenario", "Run a built-in scenario and compare with its fixture");
    sc->add_option("name", name, "Scenario name")->required()->check(CLI::IsMember(scenario_names()));
    sc->add_option("--n", n, "Dimension parameter");

    auto* ku = app.add_subcommand("kunneth", "Kunneth formula check for a product");
    ku->add_option("files", files, "Two pair files (default: built-in corpus)");
    ku->add_option("--system-a", sys_a, "Local system on the first factor");
    ku->add_option("--system-b", sys_b, "Local system on the second factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse;
    }

    try {
        if (*hom) return cmd_homology(g, file, system_file, relative, cochains, from, to);
        if (*vp) return cmd_verify_pair(g, file);
        if (*vt) return cmd_verify_triad(g, file);
        if (*th) return cmd_thom(g, file, degree);
        if (*co) return cmd_construct(g, op, files, output, identify, index, which);
        if (*cv) return cmd_cover(g, file, index, which, universal, output);
        if (*sc) return cmd_scenario(g, name, n);
        if (*ku) return cmd_kunneth(g, files, sys_a, sys_b);
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line) std::cerr << " at line " << e.line << ", column " << e.column;
        std::cerr << ": " << e.what() << "\n";
        return parse;
    } catch (const CosetLimitExceeded& e) {
        std::cerr << "coset enumeration exceeded " << e.limit << " cosets\n";
        return undecided;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse;
    }
    return ok;
}
