#include "pdpair/scenarios.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pdpair/constructions.hpp"
#include "pdpair/cover.hpp"

namespace pdpair {

namespace detail {
const std::map<std::string, std::string_view>& embedded_files();
}

namespace {

class Recorder {
public:
    explicit Recorder(ScenarioRun& run) : run_(run) {}

    template <class F>
    auto step(const std::string& name, F&& f) {
        auto start = std::chrono::steady_clock::now();
        auto finish = [&] {
            run_.steps.push_back(
                {name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
        };
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            finish();
        } else {
            auto out = f();
            finish();
            return out;
        }
    }

private:
    ScenarioRun& run_;
};

const Json& fixtures() {
    static const Json j = [] {
        const auto& files = detail::embedded_files();
        auto it = files.find("scenarios.json");
        if (it == files.end()) throw std::logic_error("scenario fixtures missing");
        return parse_json_text(std::string(it->second));
    }();
    return j;
}

bool acyclic(const std::vector<HomologyGroup>& h) {
    if (h.empty() || !(h[0] == HomologyGroup{1, {}})) return false;
    for (std::size_t p = 1; p < h.size(); ++p) {
        if (!h[p].is_zero()) return false;
    }
    return true;
}

bool homology_sphere(const std::vector<HomologyGroup>& h, int n) {
    for (int p = 0; p < static_cast<int>(h.size()); ++p) {
        bool want = p == 0 || p == n;
        if (!(h[p] == HomologyGroup{want ? 1u : 0u, {}})) return false;
    }
    return n < static_cast<int>(h.size());
}

Json homology_list(const std::vector<HomologyGroup>& h) {
    Json out = Json::array();
    for (const auto& g : h) out.push_back(homology_to_json(g));
    return out;
}

Json nullable_dimension(const DualityReport& r) {
    return r.formal_dimension ? Json(*r.formal_dimension) : Json(nullptr);
}

std::optional<CosetTable> table_of_degree(const GroupPresentation& p, std::size_t degree, std::size_t max_index) {
    for (const auto& t : low_index_subgroups(p, max_index)) {
        if (t.degree == degree) return t;
    }
    return std::nullopt;
}

Connection sign_connection(const SimplicialComplex& c, std::size_t index) {
    auto p = presentation(c);
    return Connection::from_local_system(c, p, orientation_systems(p).at(index));
}

void acyclic_cone(ScenarioRun& run, const ScenarioOptions& o) {
    Recorder rec(run);
    DualityEngine engine(o.engine);
    const int n = run.parameters["n"];
    auto a = rec.step("punctured sphere", [] { return punctured_poincare_sphere(); });
    run.observed["piece_acyclic"] = rec.step("piece homology", [&] { return acyclic(integer_homology(a)); });
    auto pair = rec.step("cone pair", [&] { return acyclic_cone_pair(n); });
    run.observed["total_simply_connected"] = presentation(pair.total).generator_count == 0;
    auto r = rec.step("verify pair", [&] { return engine.verify_pair(pair); });
    run.observed["formal_dimension"] = nullable_dimension(r);
    for (int i = 0; i < 3; ++i) run.observed["condition_" + std::to_string(i + 1)] = to_string(r.conditions[i].verdict);
    const auto& w = r.conditions[2].witness;
    run.observed["witness_system"] = w ? Json(w->system) : Json(nullptr);
    bool nonzero = false;
    if (w) {
        for (const auto& [p, g] : w->cone_homology) nonzero = nonzero || !g.is_zero();
    }
    run.observed["witness_cone_nonzero"] = nonzero;
    run.observed["classification"] = r.classification;
    rec.step("cover oracle", [&] {
        auto p = presentation(a);
        auto t = table_of_degree(p, 5, 5);
        if (!t) {
            run.observed["cover_euler_characteristic"] = nullptr;
            return;
        }
        auto cover = build_cover(SimplicialPair(a), p, *t);
        auto h = integer_homology(cover.total.total);
        bool higher = false;
        for (std::size_t q = 1; q < h.size(); ++q) higher = higher || !h[q].is_zero();
        run.observed["cover_euler_characteristic"] = cover.total.total.euler_characteristic();
        run.observed["cover_connected"] = cover.total.total.is_connected();
        run.observed["cover_has_higher_homology"] = higher;
    });
    run.notes.push_back(r.summary());
}

void wall_instance(ScenarioRun& run, const ScenarioOptions& o) {
    Recorder rec(run);
    DualityEngine engine(o.engine);
    auto pair = rec.step("puncture", [] { return puncture(projective_space3()); });
    auto rb = rec.step("boundary verdict", [&] { return engine.verify_pair(SimplicialPair(pair.sub)); });
    run.observed["boundary_verdict"] = to_string(rb.verdict);
    run.observed["boundary_dimension"] = nullable_dimension(rb);
    run.observed["total_orientable"] = integer_homology(projective_space3())[3].free_rank == 1;

    struct Found {
        std::string label;
        Connection o;
        int n;
        IntVector z;
    };
    auto found = rec.step("condition 1 scan", [&]() -> std::optional<Found> {
        for (const auto& [label, conn] : engine.orientation_connections(pair.total)) {
            for (int n = pair.total.dimension(); n >= 0; --n) {
                auto s = engine.find_fundamental_classes(pair, conn, n);
                if (s.classes.empty()) continue;
                if (engine.check_condition(pair, conn, s.classes[0], n, 1).verdict == Verdict::holds) {
                    return Found{label, conn, n, s.classes[0]};
                }
            }
        }
        return std::nullopt;
    });
    if (!found) {
        run.observed["condition_1"] = "fails";
        return;
    }
    run.observed["condition_1"] = "holds";
    run.observed["formal_dimension"] = found->n;
    run.observed["orientation_system"] = found->label;
    bool predicted = rb.verdict == Verdict::holds && rb.formal_dimension == found->n - 1;
    run.observed["verdict_from_condition_1"] = predicted ? "poincare pair" : "undetermined";
    run.observed["condition_2"] = to_string(rec.step("condition 2", [&] {
        return engine.check_condition(pair, found->o, found->z, found->n, 2).verdict;
    }));
    run.observed["condition_3"] = to_string(rec.step("condition 3", [&] {
        return engine.check_condition(pair, found->o, found->z, found->n, 3).verdict;
    }));
    auto r = rec.step("full verdict", [&] { return engine.verify_pair(pair); });
    run.observed["classification"] = r.classification;
}

void doubling(ScenarioRun& run, const ScenarioOptions& o) {
    Recorder rec(run);
    DualityEngine engine(o.engine);
    struct Instance {
        std::string name;
        SimplicialTriad triad;
    };
    auto m = moebius_band();
    SimplicialComplex ball_sphere = SimplicialComplex::from_facets(
        7, {{0, 1, 2, 3}, {0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}});
    SimplicialComplex ball_boundary = SimplicialComplex::from_facets(7, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    std::vector<Instance> instances = {
        {"moebius", SimplicialTriad(m.total, SimplicialComplex(m.total.vertex_count()), m.sub)},
        {"ball", SimplicialTriad(full_simplex(3), SimplicialComplex(4), boundary_sphere(3))},
        {"ball_wedge_sphere", SimplicialTriad(ball_sphere, SimplicialComplex(7), ball_boundary)},
    };
    bool all_agree = true;
    for (const auto& inst : instances) {
        auto d = rec.step(inst.name + " double", [&] { return double_triad(inst.triad); });
        auto dv = rec.step(inst.name + " double verdict", [&] { return engine.verify_pair(d.pair); });
        auto tv = rec.step(inst.name + " triad verdict", [&] { return engine.verify_triad(inst.triad); });
        run.observed[inst.name + ".double"] = to_string(dv.verdict);
        run.observed[inst.name + ".triad"] = to_string(tv.verdict);
        all_agree = all_agree && dv.verdict == tv.verdict;
        if (inst.name == "moebius") run.observed["moebius.double_homology"] = homology_list(integer_homology(d.pair.total));
    }
    run.observed["verdicts_agree"] = all_agree;
}

void covering(ScenarioRun& run, const ScenarioOptions& o) {
    Recorder rec(run);
    DualityEngine engine(o.engine);
    SimplicialPair rp2(projective_plane());
    auto rb = rec.step("base verdict", [&] { return engine.verify_pair(rp2); });
    run.observed["base_verdict"] = to_string(rb.verdict);
    run.observed["base_dimension"] = nullable_dimension(rb);
    run.observed["base_orientation"] = rb.orientation_system;
    auto q = presentation(rp2.total);
    auto cover = rec.step("cover", [&] { return build_cover(rp2, q, todd_coxeter(q, {}, o.engine.max_cosets)); });
    run.observed["sheets"] = cover.sheets;
    auto sb = rec.step("cover verdict", [&] { return engine.verify_pair(cover.total); });
    run.observed["cover_verdict"] = to_string(sb.verdict);
    run.observed["cover_dimension"] = nullable_dimension(sb);
    run.observed["cover_orientation"] = sb.orientation_system;
    if (!rb.orientation) return;
    rec.step("transfer", [&] {
        TwistedComplex base(rp2, *rb.orientation, true);
        TwistedComplex up(cover.total, rb.orientation->pullback(cover.projection), true);
        IntVector image = transfer_chain(cover, base, up).component(2).apply(*rb.fundamental_class);
        IntVector boundary = up.realized().boundary(2).apply(image);
        bool cycle = std::all_of(boundary.begin(), boundary.end(), [](const BigInt& x) { return x == 0; });
        run.observed["transfer_is_cycle"] = cycle;
        HomologyBasis h(up.realized(), 2);
        run.observed["cover_h2"] = homology_to_json(h.group());
        if (cycle && h.group().free_rank == 1) {
            run.observed["transfer_coordinate_abs"] = std::stol(to_string(abs(h.coordinates(image)[0])));
        }
    });
    run.notes.push_back("the infinite projective space is not a finite complex and is not constructed");
}

void kunneth(ScenarioRun& run, const ScenarioOptions&) {
    Recorder rec(run);
    std::size_t count = 0;
    bool degrees = true, cross_cap = true, torsion = false;
    Json sign_1111 = nullptr;
    for (const auto& [a, b] : kunneth_corpus()) {
        auto rep = rec.step(a.label + " x " + b.label, [&] { return kunneth_check(a, b); });
        ++count;
        for (const auto& d : rep.degrees) {
            degrees = degrees && d.match;
            torsion = torsion || !d.computed.torsion.empty();
        }
        for (const auto& c : rep.cross_cap) {
            cross_cap = cross_cap && c.holds;
            if (c.q == 1 && c.q1 == 1 && c.r == 1 && c.r1 == 1 && c.holds && c.discriminating) sign_1111 = c.sign;
        }
        run.notes.push_back(rep.label + (rep.ok ? ": ok" : ": MISMATCH"));
    }
    run.observed["combinations"] = count;
    run.observed["all_degrees_match"] = degrees;
    run.observed["torsion_present"] = torsion;
    run.observed["cross_cap_holds"] = cross_cap;
    run.observed["cross_cap_sign_q1_r1_all_one"] = sign_1111;
}

void suspension_control(ScenarioRun& run, const ScenarioOptions& o) {
    Recorder rec(run);
    DualityEngine engine(o.engine);
    const int n = run.parameters["n"];
    auto pair = rec.step("cone pair", [&] { return acyclic_cone_pair(n); });
    auto d = rec.step("double", [&] { return double_pair(pair); });
    auto h = rec.step("double homology", [&] { return integer_homology(d.pair.total); });
    run.observed["double_homology_sphere"] = homology_sphere(h, n);
    auto p = presentation(d.pair.total);
    run.observed["double_abelianization_trivial"] = abelianization(p).is_zero();
    rec.step("double coset enumeration", [&] {
        try {
            run.observed["double_coset_order"] = todd_coxeter(p, {}, o.engine.max_cosets).degree;
        } catch (const CosetLimitExceeded&) {
            run.observed["double_coset_order"] = nullptr;
        }
    });
    auto dv = rec.step("double verdict", [&] { return engine.verify_pair(d.pair); });
    run.observed["double_verdict"] = to_string(dv.verdict);
    run.observed["double_dimension"] = nullable_dimension(dv);
    auto pv = rec.step("pair verdict", [&] { return engine.verify_pair(pair); });
    run.observed["pair_verdict"] = to_string(pv.verdict);
    run.observed["pair_classification"] = pv.classification;
}

struct Entry {
    std::string name;
    int default_n;  // 0: no n parameter
    std::vector<int> allowed_n;
    std::function<void(ScenarioRun&, const ScenarioOptions&)> run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"theorem-a", 1, {1, 2}, acyclic_cone},
        {"wall-conjecture", 0, {}, wall_instance},
        {"doubling", 0, {}, doubling},
        {"covering", 0, {}, covering},
        {"kunneth", 0, {}, kunneth},
        {"example-5-2", 2, {1, 2}, suspension_control},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.push_back(e.name);
        return out;
    }();
    return names;
}

Json scenario_fixture(const std::string& name) {
    const auto& all = fixtures().at("scenarios");
    if (!all.contains(name)) throw std::invalid_argument("no fixture for scenario " + name);
    return all.at(name);
}

SimplicialComplex punctured_poincare_sphere() { return puncture(poincare_sphere()).total; }

SimplicialPair acyclic_cone_pair(int n) {
    if (n < 1) throw std::invalid_argument("acyclic_cone_pair: n must be at least 1");
    return cone(product(punctured_poincare_sphere(), boundary_sphere(n)));
}

std::vector<std::pair<KunnethFactor, KunnethFactor>> kunneth_corpus() {
    auto circle = boundary_sphere(2);
    auto rp2 = projective_plane();
    auto klein = klein_bottle();
    KunnethFactor s_sign{SimplicialPair(circle), sign_connection(circle, 1), "circle/sign"};
    KunnethFactor s_triv{SimplicialPair(circle), Connection::trivial(circle), "circle"};
    KunnethFactor p_triv{SimplicialPair(rp2), Connection::trivial(rp2), "rp2"};
    KunnethFactor p_sign{SimplicialPair(rp2), sign_connection(rp2, 1), "rp2/sign"};
    KunnethFactor k_triv{SimplicialPair(klein), Connection::trivial(klein), "klein"};
    KunnethFactor k_sign{SimplicialPair(klein), sign_connection(klein, 1), "klein/" + orientation_systems(presentation(klein)).at(1).label};
    KunnethFactor i_rel{SimplicialPair(full_simplex(1), boundary_sphere(1)), Connection::trivial(full_simplex(1)),
                        "interval rel ends"};
    return {{s_triv, s_triv}, {s_sign, s_triv}, {s_sign, s_sign}, {p_triv, p_triv},
            {p_sign, s_triv}, {k_triv, s_sign}, {k_sign, s_triv}, {s_triv, i_rel}, {p_triv, s_sign}};
}

ScenarioRun run_scenario(const std::string& name, const ScenarioOptions& options) {
    auto it = std::find_if(registry().begin(), registry().end(), [&](const Entry& e) { return e.name == name; });
    if (it == registry().end()) throw std::invalid_argument("unknown scenario " + name);
    ScenarioRun run;
    run.name = name;
    run.parameters = Json::object();
    if (it->default_n > 0) {
        int n = options.n > 0 ? options.n : (options.large && name == "theorem-a" ? 2 : it->default_n);
        if (std::find(it->allowed_n.begin(), it->allowed_n.end(), n) == it->allowed_n.end()) {
            throw std::invalid_argument(name + ": n must be one of 1, 2");
        }
        if (name == "theorem-a" && n == 2 && !options.large) throw std::invalid_argument("theorem-a: n = 2 needs --large");
        run.parameters["n"] = n;
        run.variant = "n=" + std::to_string(n);
    } else if (options.n > 0) {
        throw std::invalid_argument(name + " takes no n parameter");
    } else {
        run.variant = "default";
    }
    it->run(run, options);
    const Json fixture = scenario_fixture(name);
    const auto& variants = fixture.at("variants");
    if (!variants.contains(run.variant)) {
        run.mismatches.push_back("no expected values for variant " + run.variant);
        return run;
    }
    run.expected = variants.at(run.variant).at("expected");
    for (const auto& [key, want] : run.expected.items()) {
        if (!run.observed.contains(key)) {
            run.mismatches.push_back(key + ": not observed, expected " + want.at("value").dump());
        } else if (run.observed[key] != want.at("value")) {
            run.mismatches.push_back(key + ": observed " + run.observed[key].dump() + ", expected " +
                                     want.at("value").dump());
        }
    }
    return run;
}

Json ScenarioRun::to_json(bool timings) const {
    Json j{{"scenario", name}, {"variant", variant}, {"parameters", parameters}, {"match", match()}};
    j["observed"] = observed;
    j["expected"] = expected;
    j["mismatches"] = mismatches;
    j["notes"] = notes;
    if (timings) {
        Json t = Json::array();
        for (const auto& s : steps) t.push_back({{"step", s.name}, {"seconds", s.seconds}});
        j["timings"] = t;
    }
    return j;
}

std::string ScenarioRun::summary(bool timings) const {
    std::ostringstream s;
    s << "scenario " << name << " (" << variant << "): " << (match() ? "matches fixture" : "MISMATCH") << "\n";
    for (const auto& [key, value] : observed.items()) {
        s << "  " << key << " = " << value.dump();
        if (expected.contains(key)) {
            s << "  [" << expected[key].at("provenance").get<std::string>() << "]";
        }
        s << "\n";
    }
    for (const auto& m : mismatches) s << "  mismatch: " << m << "\n";
    if (timings) {
        for (const auto& st : steps) s << "  time " << st.name << ": " << st.seconds << " s\n";
    }
    return s.str();
}

}  // namespace pdpair
