#include "pdpair/duality.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pdpair/constructions.hpp"
#include "pdpair/snf.hpp"

namespace pdpair {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

namespace {

int rank_of(Verdict v) { return v == Verdict::fails ? 0 : v == Verdict::undecided ? 1 : 2; }

Json homology_map_json(const std::map<int, HomologyGroup>& h) {
    Json j = Json::object();
    for (const auto& [p, g] : h) {
        if (!g.is_zero()) j[std::to_string(p)] = homology_to_json(g);
    }
    return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

std::string nonzero_homology(const std::map<int, HomologyGroup>& h) {
    std::vector<std::string> parts;
    for (const auto& [p, g] : h) {
        if (!g.is_zero()) parts.push_back("H" + std::to_string(p) + "=" + g.to_string());
    }
    return join(parts, ", ");
}

/// Folds the result for one component into an accumulated result.
void fold(ConditionResult& acc, bool first, ConditionResult part, std::size_t component,
          std::set<std::string>& methods) {
    acc.checks.insert(acc.checks.end(), part.checks.begin(), part.checks.end());
    if (first || rank_of(part.verdict) < rank_of(acc.verdict)) {
        acc.verdict = part.verdict;
        acc.method = part.method;
        acc.witness = part.witness;
        acc.integer_only = part.integer_only;
        acc.component = component;
        methods.clear();
    }
    if (part.verdict == acc.verdict) methods.insert(part.method);
    if (acc.verdict == Verdict::holds) {
        acc.method = join(std::vector<std::string>(methods.begin(), methods.end()), "; ");
        acc.component.reset();
    }
}

SimplicialComplex part_of(const SimplicialComplex& component, const SimplicialComplex& sub) {
    return component.intersection(sub);
}

}  // namespace

Verdict worst(Verdict a, Verdict b) { return rank_of(a) <= rank_of(b) ? a : b; }

Json SystemCheck::to_json() const {
    return Json{{"system", system},
                {"rank", rank},
                {"quasi_iso", quasi_iso},
                {"cone_homology", homology_map_json(cone_homology)}};
}

Json ConditionResult::to_json() const {
    Json j{{"verdict", to_string(verdict)}, {"method", method}, {"integer_only", integer_only}};
    if (component) j["component"] = *component;
    if (witness) j["witness"] = witness->to_json();
    Json systems = Json::array();
    for (const auto& c : checks) systems.push_back(c.system);
    j["systems_checked"] = systems;
    return j;
}

struct DualityEngine::GroupData {
    std::optional<std::vector<CosetTable>> low_index;
    bool enumerated = false;
    std::optional<CosetTable> regular;
};

DualityEngine::DualityEngine(EngineOptions options) : options_(options) {}

DualityEngine::GroupData& DualityEngine::group_data(const GroupPresentation& p) {
    auto& slot = groups_[p.hash()];
    if (!slot) slot = std::make_shared<GroupData>();
    return *slot;
}

std::vector<std::pair<std::string, Connection>> DualityEngine::orientation_connections(const SimplicialComplex& c) {
    auto p = presentation(c);
    std::vector<std::pair<std::string, Connection>> out;
    for (const auto& s : orientation_systems(p, options_.max_orientation_systems)) {
        out.emplace_back(s.label, Connection::from_local_system(c, p, s));
    }
    return out;
}

ConditionResult DualityEngine::decide(const SimplicialComplex& space, const MapBuilder& build) {
    auto p = presentation(space);
    auto& g = group_data(p);
    ConditionResult r;
    auto run = [&](const std::string& label, const LocalSystem& s) {
        auto cert = is_quasi_iso(build(Connection::from_local_system(space, p, s)));
        SystemCheck c{label, s.rank, cert.quasi_iso, cert.cone_homology};
        r.checks.push_back(c);
        if (!cert.quasi_iso) {
            r.verdict = Verdict::fails;
            r.method = "witness " + label;
            r.witness = c;
        }
        return cert.quasi_iso;
    };
    if (!run("trivial", LocalSystem::trivial(p))) return r;
    auto signs = orientation_systems(p, options_.max_orientation_systems);
    for (std::size_t i = 1; i < signs.size(); ++i) {
        if (!run(signs[i].label, signs[i])) return r;
    }
    if (p.generator_count == 0) {
        r.method = "simply connected";
        return r;
    }
    if (!g.low_index) g.low_index = low_index_subgroups(p, options_.witness_index, options_.max_witnesses);
    for (const auto& t : *g.low_index) {
        if (!run("permutation:" + std::to_string(t.degree), permutation_system(p, t))) return r;
    }
    if (!g.enumerated) {
        g.enumerated = true;
        try {
            g.regular = todd_coxeter(p, {}, options_.max_cosets);
        } catch (const CosetLimitExceeded&) {
        }
    }
    if (!g.regular) {
        r.verdict = Verdict::undecided;
        r.integer_only = true;
        r.method = "pi_1 not enumerated within " + std::to_string(options_.max_cosets) + " cosets";
        return r;
    }
    const std::size_t order = g.regular->degree;
    if (order == 1) {
        r.method = "trivial fundamental group";
        return r;
    }
    for (const auto& t : *g.low_index) {
        if (t.degree == order) {
            r.method = "regular system of order " + std::to_string(order);
            return r;
        }
    }
    if (order > options_.lambda_budget) {
        r.verdict = Verdict::undecided;
        r.integer_only = true;
        r.method = "pi_1 of order " + std::to_string(order) + " exceeds the regular-system budget";
        return r;
    }
    if (run("regular:" + std::to_string(order), permutation_system(p, *g.regular))) {
        r.method = "regular system of order " + std::to_string(order);
    }
    return r;
}

IntVector move_chain(const TwistedComplex& from, int p, const IntVector& v, const TwistedComplex& to) {
    if (from.rank() != to.rank()) throw std::invalid_argument("move_chain: ranks differ");
    const std::size_t r = from.rank();
    IntVector out(to.cells(p) * r, BigInt(0));
    for (std::size_t c = 0; c < from.cells(p); ++c) {
        bool nonzero = false;
        for (std::size_t b = 0; b < r; ++b) nonzero = nonzero || v[c * r + b] != 0;
        if (!nonzero) continue;
        auto i = to.total().index_of(from.total().simplices(p)[from.simplex(p, c)]);
        if (!i) continue;
        auto d = to.cell(p, *i);
        if (!d) continue;
        for (std::size_t b = 0; b < r; ++b) out[*d * r + b] = v[c * r + b];
    }
    return out;
}

IntVector boundary_on(const TwistedComplex& relative, const IntVector& z, int n, const TwistedComplex& on) {
    TwistedComplex absolute(relative.pair_ptr(), relative.connection(), false);
    IntVector dz = absolute.realized().boundary(n).apply(transfer_basis(relative, absolute, n, z));
    return move_chain(absolute, n - 1, dz, on);
}

FundamentalClassSearch DualityEngine::find_fundamental_classes(const SimplicialPair& pair,
                                                               const Connection& orientation, int n) {
    TwistedComplex rel(pair, orientation, true);
    FundamentalClassSearch out;
    if (n < 0 || n > rel.dimension()) return out;
    HomologyBasis h(rel.realized(), n);
    out.group = h.group();
    if (h.group().free_rank == 1) {
        IntVector g = h.free_generators()[0];
        IntVector minus = g;
        for (auto& x : minus) x = -x;
        out.classes = {g, minus};
    } else if (h.group().free_rank > 1) {
        out.ambiguous = true;
    }
    return out;
}

ConditionResult DualityEngine::check_condition(const SimplicialPair& pair, const Connection& orientation,
                                               const IntVector& z, int n, int which) {
    if (which < 1 || which > 3) throw std::invalid_argument("condition must be 1, 2 or 3");
    auto pp = std::make_shared<const SimplicialPair>(pair);
    TwistedComplex zspace(pp, orientation, true);
    ConditionResult acc;
    std::set<std::string> methods;
    if (which == 3) {
        if (pair.sub.empty()) {
            acc.method = "empty boundary";
            return acc;
        }
        if (n == 0) {
            acc.verdict = Verdict::fails;
            acc.method = "formal dimension 0 with nonempty boundary";
            return acc;
        }
        TwistedComplex ychains(SimplicialPair(pair.sub), orientation.restrict(pair.total, pair.sub), false);
        IntVector dz = boundary_on(zspace, z, n, ychains);
        auto comps = pair.sub.components();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto zp = std::make_shared<const SimplicialPair>(comps[i]);
            TwistedComplex zz(zp, orientation.restrict(pair.total, comps[i]), false);
            IntVector dzi = move_chain(ychains, n - 1, dz, zz);
            auto build = [&](const Connection& b) {
                TwistedComplex co(zp, b, false, Variance::cochains);
                return cap_map(zz, dzi, n - 1, co, false);
            };
            fold(acc, i == 0, decide(comps[i], build), i, methods);
        }
        return acc;
    }
    auto comps = pair.total.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto cp = std::make_shared<const SimplicialPair>(comps[i], part_of(comps[i], pair.sub));
        TwistedComplex zc(cp, orientation.restrict(pair.total, comps[i]), true);
        IntVector zi = move_chain(zspace, n, z, zc);
        auto build = [&](const Connection& b) {
            TwistedComplex co(cp, b, which == 2, Variance::cochains);
            return cap_map(zc, zi, n, co, which == 1);
        };
        fold(acc, i == 0, decide(comps[i], build), i, methods);
    }
    return acc;
}

namespace {

void classify(DualityReport& r) {
    const auto& c = r.conditions;
    r.verdict = worst(worst(c[0].verdict, c[1].verdict), c[2].verdict);
    r.integer_only = r.verdict == Verdict::undecided;
    if (r.verdict == Verdict::holds) {
        r.classification = "poincare pair";
    } else if (r.verdict == Verdict::undecided) {
        r.classification = "undecided";
    } else if (c[0].verdict == Verdict::holds && c[1].verdict == Verdict::holds) {
        r.classification = "interior duality only";
    } else {
        r.classification = "not a poincare pair";
    }
}

int score(const DualityReport& r) {
    int s = 0;
    for (const auto& c : r.conditions) s += rank_of(c.verdict);
    return s;
}

}  // namespace

DualityReport DualityEngine::verify_with(const SimplicialPair& pair, const Connection& orientation, int n,
                                         const IntVector& z, const std::string& orientation_label) {
    DualityReport r;
    r.formal_dimension = n;
    r.orientation_system = orientation_label;
    r.orientation = orientation;
    r.fundamental_class = z;
    r.components = pair.total.components().size();
    for (int which = 1; which <= 3; ++which) r.conditions[which - 1] = check_condition(pair, orientation, z, n, which);
    classify(r);
    return r;
}

DualityReport DualityEngine::verify_pair(const SimplicialPair& pair) {
    auto comps = pair.total.components();
    if (comps.empty()) {
        DualityReport r;
        r.classification = "not a poincare pair";
        r.components = 0;
        r.notes.push_back("empty complex");
        return r;
    }
    struct Outcome {
        std::optional<DualityReport> best;
        Verdict verdict = Verdict::fails;
        std::vector<std::string> notes;
    };
    auto connected = [&](const SimplicialPair& pc) {
        Outcome out;
        auto pp = std::make_shared<const SimplicialPair>(pc);
        std::size_t examined = 0;
        for (const auto& [label, o] : orientation_connections(pc.total)) {
            TwistedComplex rel(pp, o, true);
            auto hs = homology_all(rel.realized());
            for (int n = rel.dimension(); n >= 0; --n) {
                if (hs[n].free_rank != 1) continue;
                HomologyBasis hb(rel.realized(), n);
                auto rep = verify_with(pc, o, n, hb.free_generators()[0], label);
                if (!hs[n].torsion.empty()) rep.notes.push_back("H_" + std::to_string(n) + " has torsion");
                ++examined;
                if (!out.best || score(rep) > score(*out.best)) out.best = rep;
                if (rep.verdict == Verdict::undecided && out.verdict == Verdict::fails) out.verdict = rep.verdict;
                if (rep.verdict == Verdict::holds) {
                    out.verdict = Verdict::holds;
                    out.best = rep;
                    return out;
                }
            }
        }
        if (examined == 0) out.notes.push_back("no orientation system gives a degree with free rank one");
        out.notes.push_back(std::to_string(examined) + " candidate (orientation, degree) pairs examined");
        return out;
    };

    if (comps.size() == 1) {
        auto out = connected(pair);
        DualityReport r = out.best.value_or(DualityReport{});
        if (!out.best) r.classification = "not a poincare pair";
        r.verdict = out.verdict;
        if (out.verdict != Verdict::holds && out.best) {
            r.notes.push_back("best candidate reported: (" + r.orientation_system + ", n = " +
                              std::to_string(*r.formal_dimension) + ")");
        }
        if (r.verdict == Verdict::undecided) r.classification = "undecided";
        if (r.verdict == Verdict::fails && r.classification == "undecided") r.classification = "not a poincare pair";
        r.integer_only = r.verdict == Verdict::undecided;
        r.notes.insert(r.notes.end(), out.notes.begin(), out.notes.end());
        return r;
    }

    std::vector<Outcome> outs;
    std::vector<SimplicialPair> pieces;
    for (const auto& c : comps) {
        pieces.emplace_back(c, part_of(c, pair.sub));
        outs.push_back(connected(pieces.back()));
    }
    DualityReport r;
    r.components = comps.size();
    bool all_hold = std::all_of(outs.begin(), outs.end(), [](const Outcome& o) { return o.verdict == Verdict::holds; });
    std::set<int> dims;
    for (const auto& o : outs) {
        if (o.best) dims.insert(*o.best->formal_dimension);
    }
    if (all_hold && dims.size() == 1) {
        const int n = *dims.begin();
        std::vector<std::pair<SimplicialComplex, Connection>> parts;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            parts.emplace_back(comps[i], *outs[i].best->orientation);
            labels.push_back(outs[i].best->orientation_system);
        }
        Connection o = Connection::merge(pair.total, parts);
        auto pp = std::make_shared<const SimplicialPair>(pair);
        TwistedComplex rel(pp, o, true);
        IntVector z(rel.cells(n) * rel.rank(), BigInt(0));
        for (std::size_t i = 0; i < comps.size(); ++i) {
            TwistedComplex ci(pieces[i], *outs[i].best->orientation, true);
            IntVector zi = move_chain(ci, n, *outs[i].best->fundamental_class, rel);
            for (std::size_t k = 0; k < z.size(); ++k) z[k] += zi[k];
        }
        return verify_with(pair, o, n, z, join(labels, "+"));
    }
    // report the worst component
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        if (rank_of(outs[i].verdict) < rank_of(outs[worst_index].verdict)) worst_index = i;
    }
    if (outs[worst_index].best) r = *outs[worst_index].best;
    r.components = comps.size();
    r.verdict = all_hold ? Verdict::fails : outs[worst_index].verdict;
    r.fundamental_class.reset();
    r.orientation.reset();
    r.classification = r.verdict == Verdict::undecided ? "undecided" : "not a poincare pair";
    r.integer_only = r.verdict == Verdict::undecided;
    if (all_hold) r.notes.push_back("components have different formal dimensions");
    r.notes.push_back("component " + std::to_string(worst_index) + " decides the verdict");
    for (const auto& note : outs[worst_index].notes) r.notes.push_back(note);
    return r;
}

DualityReport verify_pair(const SimplicialPair& pair, const EngineOptions& options) {
    DualityEngine engine(options);
    return engine.verify_pair(pair);
}

TriadReport DualityEngine::verify_triad(const SimplicialTriad& triad) {
    TriadReport t;
    SimplicialComplex y = triad.sub_union(), y0 = triad.sub_intersection();
    SimplicialPair whole(triad.total, y);
    t.pair = verify_pair(whole);
    t.notes.push_back("subcomplex couple is excisive (simplicial)");
    if (t.pair.verdict != Verdict::holds) {
        t.verdict = t.pair.verdict;
        t.notes.push_back("(X, Y1 u Y2) is not certified as a poincare pair");
        return t;
    }
    const int n = *t.pair.formal_dimension;
    const Connection& o = *t.pair.orientation;
    auto pp = std::make_shared<const SimplicialPair>(whole);
    TwistedComplex zspace(pp, o, true);
    TwistedComplex ychains(SimplicialPair(y), o.restrict(triad.total, y), false);
    IntVector dz = n > 0 ? boundary_on(zspace, *t.pair.fundamental_class, n, ychains) : IntVector{};
    t.verdict = Verdict::holds;
    const SimplicialComplex* subs[2] = {&triad.sub1, &triad.sub2};
    for (int i = 0; i < 2; ++i) {
        const SimplicialComplex& yi = *subs[i];
        if (yi.empty()) {
            t.notes.push_back("Y" + std::to_string(i + 1) + " is empty");
            continue;
        }
        SimplicialPair piece(yi, y0.empty() ? SimplicialComplex(yi.vertex_count()) : y0);
        Connection oi = o.restrict(triad.total, yi);
        TwistedComplex rel(piece, oi, true);
        IntVector zi = n > 0 ? move_chain(ychains, n - 1, dz, rel) : IntVector(rel.cells(0) * rel.rank(), BigInt(0));
        auto rep = verify_with(piece, oi, n - 1, zi, t.pair.orientation_system + "|Y" + std::to_string(i + 1));
        if (yi.is_connected() && rep.verdict == Verdict::holds) {
            HomologyBasis h(rel.realized(), n - 1);
            if (h.group().free_rank == 1) {
                auto c = h.coordinates(zi);
                if (abs(c[0]) == 1) t.piece_signs[i] = c[0] > 0 ? 1 : -1;
            }
        }
        t.verdict = worst(t.verdict, rep.verdict);
        t.pieces[i] = std::move(rep);
    }
    t.notes.push_back("pieces carry the restrictions of the boundary of [X] with sign +1");
    return t;
}

ThomResult DualityEngine::verify_thom_class(const SimplicialPair& pair, const Connection& orientation,
                                            const IntVector& u, int k, const std::string& orientation_label) {
    ThomResult out;
    out.degree = k;
    out.orientation_system = orientation_label;
    out.orientation = orientation;
    out.cocycle = u;
    auto pp = std::make_shared<const SimplicialPair>(pair);
    TwistedComplex uspace(pp, orientation, true, Variance::cochains);
    auto comps = pair.total.components();
    std::set<std::string> methods;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto cp = std::make_shared<const SimplicialPair>(comps[i], part_of(comps[i], pair.sub));
        Connection oc = orientation.restrict(pair.total, comps[i]);
        TwistedComplex uc(cp, oc, true, Variance::cochains);
        IntVector ui = move_chain(uspace, k, u, uc);
        auto build = [&](const Connection& b) {
            TwistedComplex chains(cp, b, true);
            TwistedComplex target(cp, b.tensor(oc), false);
            return thom_cap_map(chains, uc, ui, k, target);
        };
        fold(out.check, i == 0, decide(comps[i], build), i, methods);
    }
    out.verdict = out.check.verdict;
    return out;
}

std::optional<ThomResult> DualityEngine::find_thom_class(const SimplicialPair& pair, int k) {
    if (!pair.total.is_connected()) throw std::invalid_argument("find_thom_class: total complex must be connected");
    std::optional<ThomResult> fallback;
    for (const auto& [label, o] : orientation_connections(pair.total)) {
        TwistedComplex co(pair, o, true, Variance::cochains);
        if (k < 0 || k > co.dimension()) return std::nullopt;
        HomologyBasis h(co.realized(), -k);
        if (h.group().free_rank != 1) continue;
        auto r = verify_thom_class(pair, o, h.free_generators()[0], k, label);
        if (r.verdict == Verdict::holds) return r;
        if (r.verdict == Verdict::undecided && !fallback) fallback = r;
    }
    return fallback;
}

Json ThomResult::to_json() const {
    return Json{{"verdict", to_string(verdict)},
                {"degree", degree},
                {"orientation_system", orientation_system},
                {"check", check.to_json()}};
}

Json DualityReport::to_json() const {
    Json j{{"verdict", to_string(verdict)}, {"classification", classification}};
    j["formal_dimension"] = formal_dimension ? Json(*formal_dimension) : Json(nullptr);
    j["orientation_system"] = orientation_system;
    j["components"] = components;
    j["integer_only"] = integer_only;
    Json conds = Json::object();
    for (int i = 0; i < 3; ++i) conds[std::to_string(i + 1)] = conditions[i].to_json();
    j["conditions"] = conds;
    if (fundamental_class) {
        Json coeffs = Json::array();
        for (std::size_t i = 0; i < fundamental_class->size(); ++i) {
            if ((*fundamental_class)[i] != 0) coeffs.push_back({i, to_string((*fundamental_class)[i])});
        }
        j["fundamental_class"] = coeffs;
    }
    j["notes"] = notes;
    return j;
}

std::string DualityReport::summary() const {
    std::ostringstream s;
    s << "verdict: " << classification;
    if (formal_dimension) s << " (n = " << *formal_dimension << ", orientation " << orientation_system << ")";
    s << "\n";
    const char* names[3] = {"(1) [X] cap: H^m(X) -> H_n-m(X,Y)", "(2) [X] cap: H^m(X,Y) -> H_n-m(X)",
                            "(3) d[X] cap on Y"};
    for (int i = 0; i < 3; ++i) {
        const auto& c = conditions[i];
        s << "  " << names[i] << ": " << to_string(c.verdict);
        if (!c.method.empty()) s << " [" << c.method << "]";
        if (c.witness) s << " cone " << nonzero_homology(c.witness->cone_homology);
        s << "\n";
    }
    for (const auto& n : notes) s << "  note: " << n << "\n";
    return s.str();
}

Json TriadReport::to_json() const {
    Json j{{"verdict", to_string(verdict)}, {"pair", pair.to_json()}};
    Json ps = Json::array();
    for (int i = 0; i < 2; ++i) {
        Json piece = pieces[i] ? pieces[i]->to_json() : Json(nullptr);
        if (pieces[i]) piece["sign"] = piece_signs[i] ? Json(*piece_signs[i]) : Json(nullptr);
        ps.push_back(piece);
    }
    j["pieces"] = ps;
    j["notes"] = notes;
    return j;
}

std::string TriadReport::summary() const {
    std::ostringstream s;
    s << "triad verdict: " << to_string(verdict) << "\n(X, Y1 u Y2): " << pair.summary();
    for (int i = 0; i < 2; ++i) {
        if (pieces[i]) s << "(Y" << i + 1 << ", Y0): " << pieces[i]->summary();
    }
    for (const auto& n : notes) s << "  note: " << n << "\n";
    return s.str();
}

HomologyGroup direct_sum(const std::vector<HomologyGroup>& parts) {
    HomologyGroup out;
    std::vector<BigInt> orders;
    for (const auto& p : parts) {
        out.free_rank += p.free_rank;
        orders.insert(orders.end(), p.torsion.begin(), p.torsion.end());
    }
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < orders.size(); ++i) e.push_back({i, i, orders[i]});
    for (const auto& f : invariant_factors(SparseIntMatrix::from_triplets(orders.size(), orders.size(), e))) {
        if (f != 1) out.torsion.push_back(f);
    }
    return out;
}

HomologyGroup tensor_groups(const HomologyGroup& a, const HomologyGroup& b) {
    std::vector<HomologyGroup> parts;
    parts.push_back({a.free_rank * b.free_rank, {}});
    for (const auto& t : a.torsion) {
        for (std::size_t i = 0; i < b.free_rank; ++i) parts.push_back({0, {t}});
    }
    for (const auto& t : b.torsion) {
        for (std::size_t i = 0; i < a.free_rank; ++i) parts.push_back({0, {t}});
    }
    for (const auto& s : a.torsion) {
        for (const auto& t : b.torsion) parts.push_back({0, {BigInt(gcd(s, t))}});
    }
    return direct_sum(parts);
}

HomologyGroup tor_groups(const HomologyGroup& a, const HomologyGroup& b) {
    std::vector<HomologyGroup> parts;
    for (const auto& s : a.torsion) {
        for (const auto& t : b.torsion) parts.push_back({0, {BigInt(gcd(s, t))}});
    }
    return direct_sum(parts);
}

Json KunnethReport::to_json() const {
    Json degs = Json::array();
    for (const auto& d : degrees) {
        degs.push_back({{"degree", d.degree},
                        {"computed", homology_to_json(d.computed)},
                        {"predicted", homology_to_json(d.predicted)},
                        {"match", d.match}});
    }
    Json signs = Json::array();
    for (const auto& c : cross_cap) {
        signs.push_back({{"q", c.q}, {"q1", c.q1}, {"r", c.r}, {"r1", c.r1}, {"sign", c.sign}, {"holds", c.holds},
                         {"discriminating", c.discriminating}});
    }
    return Json{{"label", label}, {"ok", ok}, {"degrees", degs}, {"cross_cap", signs}};
}

KunnethReport kunneth_check(const KunnethFactor& a, const KunnethFactor& b) {
    KunnethReport rep;
    rep.label = a.label + " x " + b.label;
    SimplicialPair prod = product_pair(a.pair, b.pair);
    Connection conn = product_connection(a.pair.total, a.connection, b.pair.total, b.connection, prod.total);
    auto pp = std::make_shared<const SimplicialPair>(prod);
    TwistedComplex ta(a.pair, a.connection, true), tb(b.pair, b.connection, true), tp(pp, conn, true);
    std::vector<HomologyGroup> ha, hb;
    for (int i = 0; i <= ta.dimension(); ++i) ha.push_back(ta.homology(i));
    for (int j = 0; j <= tb.dimension(); ++j) hb.push_back(tb.homology(j));
    rep.ok = true;
    for (int k = 0; k <= tp.dimension(); ++k) {
        std::vector<HomologyGroup> parts;
        for (int i = 0; i < static_cast<int>(ha.size()); ++i) {
            int j = k - i;
            if (j >= 0 && j < static_cast<int>(hb.size())) parts.push_back(tensor_groups(ha[i], hb[j]));
            if (j - 1 >= 0 && j - 1 < static_cast<int>(hb.size())) parts.push_back(tor_groups(ha[i], hb[j - 1]));
        }
        KunnethDegree d{k, tp.homology(k), direct_sum(parts), false};
        d.match = d.computed == d.predicted;
        rep.ok = rep.ok && d.match;
        rep.degrees.push_back(d);
    }
    if (!a.pair.sub.empty() || !b.pair.sub.empty()) return rep;

    // cross/cap compatibility on generators, cochains with integer coefficients
    const auto& xa = a.pair.total;
    const auto& xb = b.pair.total;
    TwistedComplex ca(a.pair, Connection::trivial(xa), false, Variance::cochains);
    TwistedComplex cb(b.pair, Connection::trivial(xb), false, Variance::cochains);
    TwistedComplex cp(pp, Connection::trivial(prod.total), false, Variance::cochains);
    auto generators = [](const ChainComplexZ& c, int p) {
        HomologyBasis h(c, p);
        auto g = h.free_generators();
        g.insert(g.end(), h.torsion_generators().begin(), h.torsion_generators().end());
        return g;
    };
    std::map<int, HomologyBasis> prod_bases;
    auto basis = [&](int p) -> HomologyBasis& {
        auto it = prod_bases.find(p);
        if (it == prod_bases.end()) it = prod_bases.emplace(p, HomologyBasis(tp.realized(), p)).first;
        return it->second;
    };
    for (int q = 0; q <= ta.dimension(); ++q) {
        auto as = generators(ta.realized(), q);
        for (int r = 0; r <= tb.dimension(); ++r) {
            auto bs = generators(tb.realized(), r);
            for (int q1 = 0; q1 <= q; ++q1) {
                auto xis = generators(ca.realized(), -q1);
                for (int r1 = 0; r1 <= r; ++r1) {
                    auto etas = generators(cb.realized(), -r1);
                    CrossCapCheck check{q, q1, r, r1, ((q - q1) * r1) % 2 == 0 ? 1 : -1, true, false};
                    bool any = false;
                    for (const auto& x : as) {
                        for (const auto& y : bs) {
                            IntVector ab = cross_chain(ta, q, x, tb, r, y, tp);
                            for (const auto& xi : xis) {
                                IntVector xa_cap = cap_chain(ta, q, x, ca, q1, xi, ta);
                                for (const auto& eta : etas) {
                                    IntVector xe = cross_cochain(ca, q1, xi, cb, r1, eta, cp);
                                    IntVector lhs = cap_chain(tp, q + r, ab, cp, q1 + r1, xe, tp);
                                    IntVector rhs =
                                        cross_chain(ta, q - q1, xa_cap, tb, r - r1, cap_chain(tb, r, y, cb, r1, eta, tb), tp);
                                    IntVector diff = lhs, other = lhs;
                                    for (std::size_t i = 0; i < lhs.size(); ++i) {
                                        diff[i] -= check.sign * rhs[i];
                                        other[i] += check.sign * rhs[i];
                                    }
                                    auto& h = basis(q + r - q1 - r1);
                                    any = true;
                                    if (!h.is_boundary(diff)) check.holds = false;
                                    if (!h.is_boundary(other)) check.discriminating = true;
                                }
                            }
                        }
                    }
                    if (!any) continue;
                    rep.ok = rep.ok && check.holds;
                    rep.cross_cap.push_back(check);
                }
            }
        }
    }
    return rep;
}

}  // namespace pdpair
