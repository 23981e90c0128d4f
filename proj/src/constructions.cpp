#include "pdpair/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pdpair/io.hpp"

namespace pdpair {

namespace detail {
const std::map<std::string, std::string_view>& embedded_files();
}

namespace {

std::vector<Simplex> facets_of(const SimplicialComplex& c) { return c.empty() ? std::vector<Simplex>{} : c.facets(); }

bool contains_all(const Simplex& big, const Simplex& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Staircase paths from (0,0) to (q,r) as sequences of (i, j) offsets.
std::vector<std::vector<std::pair<int, int>>> staircases(int q, int r) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> path{{0, 0}};
    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == q && j == r) {
            out.push_back(path);
            return;
        }
        if (i < q) {
            path.emplace_back(i + 1, j);
            self(self, i + 1, j);
            path.pop_back();
        }
        if (j < r) {
            path.emplace_back(i, j + 1);
            self(self, i, j + 1);
            path.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace

SimplicialComplex full_simplex(int n) {
    if (n < 0) throw std::invalid_argument("full_simplex: negative dimension");
    Simplex s;
    for (int i = 0; i <= n; ++i) s.push_back(i);
    return SimplicialComplex::from_facets(n + 1, {s});
}

SimplicialComplex boundary_sphere(int n) {
    if (n < 1) throw std::invalid_argument("boundary_sphere: n must be at least 1");
    Simplex s;
    for (int i = 0; i <= n; ++i) s.push_back(i);
    std::vector<Simplex> faces;
    for (int k = 0; k <= n; ++k) faces.push_back(face(s, k));
    return SimplicialComplex::from_facets(n + 1, faces);
}

SimplicialPair cone(const SimplicialComplex& c) {
    if (c.empty()) throw std::invalid_argument("cone of the empty complex");
    const Vertex apex = static_cast<Vertex>(c.vertex_count());
    std::vector<Simplex> facets;
    for (auto f : c.facets()) {
        f.push_back(apex);
        facets.push_back(std::move(f));
    }
    auto total = SimplicialComplex::from_facets(c.vertex_count() + 1, facets);
    return SimplicialPair(std::move(total), c.widened(c.vertex_count() + 1));
}

SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b) {
    const std::size_t nb = b.vertex_count();
    const std::size_t n = a.vertex_count() * nb;
    if (a.empty() || b.empty()) return SimplicialComplex(n);
    std::map<std::pair<int, int>, std::vector<std::vector<std::pair<int, int>>>> paths;
    std::vector<Simplex> facets;
    for (const auto& s : a.facets()) {
        for (const auto& t : b.facets()) {
            int q = static_cast<int>(s.size()) - 1, r = static_cast<int>(t.size()) - 1;
            auto it = paths.find({q, r});
            if (it == paths.end()) it = paths.emplace(std::make_pair(q, r), staircases(q, r)).first;
            for (const auto& path : it->second) {
                Simplex cell;
                for (auto [i, j] : path) cell.push_back(product_vertex(s[i], t[j], nb));
                facets.push_back(std::move(cell));
            }
        }
    }
    return SimplicialComplex::from_facets(n, facets);
}

SimplicialPair product_pair(const SimplicialPair& a, const SimplicialPair& b) {
    auto total = product(a.total, b.total);
    auto sub = product(a.total, b.sub).union_with(product(a.sub, b.total));
    return SimplicialPair(std::move(total), std::move(sub));
}

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
    const Vertex shift = static_cast<Vertex>(a.vertex_count());
    auto facets = facets_of(a);
    for (auto f : facets_of(b)) {
        for (auto& v : f) v += shift;
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(a.vertex_count() + b.vertex_count(), facets);
}

SimplicialComplex stellar_subdivide(const SimplicialComplex& c, const Simplex& tau,
                                    std::vector<SimplicialComplex*> also) {
    if (!c.contains(tau)) throw std::invalid_argument("stellar_subdivide: simplex not in complex");
    const Vertex b = static_cast<Vertex>(c.vertex_count());
    const std::size_t n = c.vertex_count() + 1;
    auto subdivide = [&](const SimplicialComplex& k) {
        std::vector<Simplex> facets;
        for (const auto& f : facets_of(k)) {
            if (!contains_all(f, tau)) {
                facets.push_back(f);
                continue;
            }
            for (auto v : tau) {
                Simplex g;
                for (auto w : f) {
                    if (w != v) g.push_back(w);
                }
                g.push_back(b);
                facets.push_back(std::move(g));
            }
        }
        return SimplicialComplex::from_facets(n, facets);
    };
    for (auto* k : also) *k = k->contains(tau) ? subdivide(*k) : k->widened(n);
    return subdivide(c);
}

SimplicialPair make_full(const SimplicialPair& pair, std::vector<SimplicialComplex*> also) {
    SimplicialComplex total = pair.total;
    SimplicialComplex sub = pair.sub;
    while (true) {
        std::vector<char> in_sub(total.vertex_count(), 0);
        for (auto v : sub.vertices()) in_sub[v] = 1;
        std::optional<Simplex> bad;
        for (int p = 1; p <= total.dimension() && !bad; ++p) {
            for (const auto& s : total.simplices(p)) {
                if (!sub.contains(s) && std::all_of(s.begin(), s.end(), [&](Vertex v) { return in_sub[v]; })) {
                    bad = s;
                    break;
                }
            }
        }
        if (!bad) break;
        auto followers = also;
        followers.push_back(&sub);
        total = stellar_subdivide(total, *bad, followers);
    }
    return SimplicialPair(std::move(total), std::move(sub));
}

GlueResult glue(const SimplicialPair& x1, const SimplicialPair& x2, const std::vector<Vertex>& identification) {
    GlueResult r;
    r.piece1 = make_full(x1);
    r.piece2 = make_full(x2);
    const auto& s1 = r.piece1.sub;
    const auto& s2 = r.piece2.sub;
    if (identification.size() < x1.total.vertex_count()) throw std::invalid_argument("glue: identification too short");

    SimplicialMap phi{std::make_shared<const SimplicialComplex>(s1), std::make_shared<const SimplicialComplex>(s2),
                      std::vector<Vertex>(s1.vertex_count(), 0)};
    for (auto v : s1.vertices()) {
        if (identification[v] >= s2.vertex_count()) throw std::invalid_argument("glue: identification out of range");
        phi.vertex_images[v] = identification[v];
    }
    if (s1.vertices().size() != s2.vertices().size() || !phi.is_isomorphism()) {
        throw std::invalid_argument("glue: identification is not an isomorphism of the subcomplexes");
    }

    const std::size_t n1 = r.piece1.total.vertex_count();
    const std::size_t n2 = r.piece2.total.vertex_count();
    std::vector<char> in_s2(n2, 0);
    std::vector<Vertex> back(n2, 0);
    for (auto v : s1.vertices()) {
        in_s2[identification[v]] = 1;
        back[identification[v]] = v;
    }
    r.inclusion1.resize(n1);
    for (Vertex v = 0; v < n1; ++v) r.inclusion1[v] = v;
    r.inclusion2.resize(n2);
    Vertex next = static_cast<Vertex>(n1);
    for (Vertex w = 0; w < n2; ++w) r.inclusion2[w] = in_s2[w] ? back[w] : next++;

    auto facets = facets_of(r.piece1.total);
    for (auto f : facets_of(r.piece2.total)) {
        for (auto& v : f) v = r.inclusion2[v];
        facets.push_back(std::move(f));
    }
    r.complex = SimplicialComplex::from_facets(next, facets);
    return r;
}

namespace {

SimplicialComplex image_of(const SimplicialComplex& c, const std::vector<Vertex>& map, std::size_t n) {
    std::vector<Simplex> facets;
    for (auto f : facets_of(c)) {
        for (auto& v : f) v = map[v];
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(n, facets);
}

DoubleResult double_along(const SimplicialComplex& total, const SimplicialComplex& glued, const SimplicialComplex& kept) {
    if (glued.empty()) throw std::invalid_argument("double: empty subcomplex");
    SimplicialComplex y1 = kept.empty() ? SimplicialComplex(total.vertex_count()) : kept;
    auto full = make_full(SimplicialPair(total, glued), {&y1});
    std::vector<Vertex> id(full.total.vertex_count());
    for (Vertex v = 0; v < id.size(); ++v) id[v] = v;
    DoubleResult d;
    d.parts = glue(full, full, id);
    const std::size_t n = d.parts.complex.vertex_count();
    auto sub = image_of(y1, d.parts.inclusion1, n).union_with(image_of(y1, d.parts.inclusion2, n));
    d.pair = SimplicialPair(d.parts.complex, std::move(sub));
    auto shared = std::make_shared<const SimplicialComplex>(d.parts.complex);
    std::vector<Vertex> swap(n);
    for (Vertex v = 0; v < d.parts.inclusion1.size(); ++v) {
        swap[d.parts.inclusion1[v]] = d.parts.inclusion2[v];
        swap[d.parts.inclusion2[v]] = d.parts.inclusion1[v];
    }
    d.swap = SimplicialMap{shared, shared, std::move(swap)};
    return d;
}

}  // namespace

DoubleResult double_pair(const SimplicialPair& pair) { return double_along(pair.total, pair.sub, SimplicialComplex()); }

DoubleResult double_triad(const SimplicialTriad& triad) { return double_along(triad.total, triad.sub2, triad.sub1); }

SimplicialPair puncture(const SimplicialComplex& c, std::size_t facet_index) {
    if (c.empty() || !c.is_pure()) throw std::invalid_argument("puncture: complex is not pure");
    auto facets = c.facets();
    if (facet_index >= facets.size()) throw std::invalid_argument("puncture: facet index out of range");
    const Simplex sigma = facets[facet_index];
    facets.erase(facets.begin() + static_cast<long>(facet_index));
    std::vector<Simplex> faces;
    for (std::size_t k = 0; k < sigma.size(); ++k) faces.push_back(face(sigma, k));
    facets.insert(facets.end(), faces.begin(), faces.end());
    auto total = SimplicialComplex::from_facets(c.vertex_count(), facets);
    auto sub = SimplicialComplex::from_facets(c.vertex_count(), faces);
    return SimplicialPair(std::move(total), std::move(sub));
}

SimplicialComplex embedded_complex(const std::string& name) {
    const auto& files = detail::embedded_files();
    auto it = files.find(name);
    if (it == files.end()) throw std::invalid_argument("no embedded data file " + name);
    return complex_from_json(parse_json_text(std::string(it->second)));
}

namespace {

// A closed 3-manifold triangulation with the homology of S^3 or RP^3 as
// advertised; checked once when first requested.
SimplicialComplex load_checked_3_manifold(const std::string& name, const std::vector<HomologyGroup>& expected) {
    auto c = embedded_complex(name);
    auto diag = validate(c);
    if (!diag.valid()) throw std::logic_error(name + ": " + diag.problems.front());
    if (c.dimension() != 3 || !c.is_pure()) throw std::logic_error(name + ": not pure of dimension 3");
    std::vector<int> cofaces(c.count(2), 0);
    for (std::size_t i = 0; i < c.count(3); ++i) {
        for (int k = 0; k < 4; ++k) ++cofaces[c.face_index(3, i, k)];
    }
    for (int n : cofaces) {
        if (n != 2) throw std::logic_error(name + ": not a closed pseudomanifold");
    }
    if (integer_homology(c) != expected) throw std::logic_error(name + ": unexpected integer homology");
    return c;
}

}  // namespace

const SimplicialComplex& poincare_sphere() {
    static const SimplicialComplex c =
        load_checked_3_manifold("poincare_sphere.json", {{1, {}}, {0, {}}, {0, {}}, {1, {}}});
    return c;
}

const SimplicialComplex& projective_space3() {
    static const SimplicialComplex c =
        load_checked_3_manifold("rp3.json", {{1, {}}, {0, {BigInt(2)}}, {0, {}}, {1, {}}});
    return c;
}

SimplicialComplex projective_plane() {
    std::vector<Simplex> facets{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
    for (auto& f : facets) {
        for (auto& v : f) --v;
    }
    return SimplicialComplex::from_facets(6, facets);
}

SimplicialPair moebius_band() {
    std::vector<Simplex> triangles, boundary;
    for (Vertex i = 0; i < 5; ++i) {
        triangles.push_back({i, (i + 1) % 5, (i + 2) % 5});
        boundary.push_back({i, (i + 2) % 5});
    }
    return SimplicialPair(SimplicialComplex::from_facets(5, triangles), SimplicialComplex::from_facets(5, boundary));
}

SimplicialComplex klein_bottle() { return double_pair(moebius_band()).pair.total; }

SimplicialComplex torus() { return product(boundary_sphere(2), boundary_sphere(2)); }

}  // namespace pdpair
