#include "pdpair/complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pdpair {

namespace {

constexpr std::uint32_t kMissing = UINT32_MAX;

std::string show(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

Simplex face(const Simplex& s, std::size_t k) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != k) f.push_back(s[i]);
    }
    return f;
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets) {
    SimplicialComplex c(vertex_count);
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (f.empty()) throw std::invalid_argument("empty facet");
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
            throw std::invalid_argument("facet " + show(f) + " repeats a vertex");
        }
        if (f.back() >= vertex_count) throw std::invalid_argument("facet " + show(f) + " uses a vertex out of range");
        if (f.size() > 24) throw std::invalid_argument("facet dimension too large");
        if (c.by_dim_.size() < f.size()) c.by_dim_.resize(f.size());
        const std::uint32_t n = static_cast<std::uint32_t>(f.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Simplex s;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) s.push_back(f[i]);
            }
            c.by_dim_[s.size() - 1].push_back(std::move(s));
        }
    }
    for (auto& list : c.by_dim_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    c.build_faces();
    return c;
}

SimplicialComplex SimplicialComplex::from_simplices_unchecked(std::size_t vertex_count,
                                                              std::vector<Simplex> simplices) {
    SimplicialComplex c(vertex_count);
    for (auto& s : simplices) {
        if (s.empty()) continue;
        if (c.by_dim_.size() < s.size()) c.by_dim_.resize(s.size());
        c.by_dim_[s.size() - 1].push_back(std::move(s));
    }
    for (auto& list : c.by_dim_) std::sort(list.begin(), list.end());
    c.build_faces();
    return c;
}

void SimplicialComplex::build_faces() {
    faces_.assign(by_dim_.size(), {});
    for (int p = 1; p <= dimension(); ++p) {
        auto& table = faces_[p];
        table.resize(count(p) * (p + 1));
        const auto& list = by_dim_[p];
        for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t k = 0; k <= static_cast<std::size_t>(p); ++k) {
                auto idx = index_of(face(list[i], k));
                table[i * (p + 1) + k] = idx ? static_cast<std::uint32_t>(*idx) : kMissing;
            }
        }
    }
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
    static const std::vector<Simplex> none;
    if (p < 0 || p > dimension()) return none;
    return by_dim_[p];
}

std::size_t SimplicialComplex::size() const {
    std::size_t n = 0;
    for (const auto& l : by_dim_) n += l.size();
    return n;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& l : by_dim_) f.push_back(l.size());
    return f;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t p = 0; p < by_dim_.size(); ++p) chi += (p % 2 ? -1L : 1L) * static_cast<long>(by_dim_[p].size());
    return chi;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty()) return std::nullopt;
    const auto& list = simplices(static_cast<int>(s.size()) - 1);
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it != list.end() && *it == s) return static_cast<std::size_t>(it - list.begin());
    return std::nullopt;
}

std::size_t SimplicialComplex::face_index(int p, std::size_t i, std::size_t k) const {
    auto idx = faces_[p][i * (p + 1) + k];
    if (idx == kMissing) throw std::logic_error("face of " + show(by_dim_[p][i]) + " missing");
    return idx;
}

std::vector<Vertex> SimplicialComplex::vertices() const {
    std::vector<Vertex> v;
    for (const auto& s : simplices(0)) v.push_back(s[0]);
    return v;
}

std::vector<Simplex> SimplicialComplex::facets() const {
    std::vector<std::vector<char>> covered(by_dim_.size());
    for (int p = 0; p <= dimension(); ++p) covered[p].assign(count(p), 0);
    for (int p = 1; p <= dimension(); ++p) {
        for (std::size_t i = 0; i < count(p); ++i) {
            for (int k = 0; k <= p; ++k) covered[p - 1][face_index(p, i, k)] = 1;
        }
    }
    std::vector<Simplex> out;
    for (int p = 0; p <= dimension(); ++p) {
        for (std::size_t i = 0; i < count(p); ++i) {
            if (!covered[p][i]) out.push_back(by_dim_[p][i]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool SimplicialComplex::is_pure() const {
    for (const auto& f : facets()) {
        if (static_cast<int>(f.size()) - 1 != dimension()) return false;
    }
    return true;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
    if (vertex_count_ != other.vertex_count_) return false;
    for (const auto& list : by_dim_) {
        for (const auto& s : list) {
            if (!other.contains(s)) return false;
        }
    }
    return true;
}

std::vector<SimplicialComplex> SimplicialComplex::components() const {
    UnionFind uf(vertex_count_);
    for (const auto& e : simplices(1)) uf.unite(e[0], e[1]);
    std::vector<Vertex> roots;
    for (auto v : vertices()) {
        if (uf.find(v) == v) roots.push_back(v);
    }
    std::vector<SimplicialComplex> out;
    for (auto r : roots) {
        SimplicialComplex c(vertex_count_);
        c.by_dim_.resize(by_dim_.size());
        for (std::size_t p = 0; p < by_dim_.size(); ++p) {
            for (const auto& s : by_dim_[p]) {
                if (uf.find(s[0]) == r) c.by_dim_[p].push_back(s);
            }
        }
        while (!c.by_dim_.empty() && c.by_dim_.back().empty()) c.by_dim_.pop_back();
        c.build_faces();
        out.push_back(std::move(c));
    }
    return out;
}

bool SimplicialComplex::is_connected() const { return components().size() == 1; }

SimplicialComplex SimplicialComplex::union_with(const SimplicialComplex& other) const {
    if (vertex_count_ != other.vertex_count_) throw std::invalid_argument("union of complexes on different vertex sets");
    SimplicialComplex c(vertex_count_);
    c.by_dim_.resize(std::max(by_dim_.size(), other.by_dim_.size()));
    for (std::size_t p = 0; p < c.by_dim_.size(); ++p) {
        const auto& a = simplices(static_cast<int>(p));
        const auto& b = other.simplices(static_cast<int>(p));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.by_dim_[p]));
    }
    c.build_faces();
    return c;
}

SimplicialComplex SimplicialComplex::intersection(const SimplicialComplex& other) const {
    if (vertex_count_ != other.vertex_count_) {
        throw std::invalid_argument("intersection of complexes on different vertex sets");
    }
    SimplicialComplex c(vertex_count_);
    c.by_dim_.resize(std::min(by_dim_.size(), other.by_dim_.size()));
    for (std::size_t p = 0; p < c.by_dim_.size(); ++p) {
        const auto& a = by_dim_[p];
        const auto& b = other.by_dim_[p];
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.by_dim_[p]));
    }
    while (!c.by_dim_.empty() && c.by_dim_.back().empty()) c.by_dim_.pop_back();
    c.build_faces();
    return c;
}

SimplicialComplex SimplicialComplex::widened(std::size_t n) const {
    if (n < vertex_count_) throw std::invalid_argument("widened: smaller vertex universe");
    SimplicialComplex c = *this;
    c.vertex_count_ = n;
    return c;
}

SimplicialComplex SimplicialComplex::induced(const std::vector<char>& keep) const {
    SimplicialComplex c(vertex_count_);
    c.by_dim_.resize(by_dim_.size());
    for (std::size_t p = 0; p < by_dim_.size(); ++p) {
        for (const auto& s : by_dim_[p]) {
            if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep[v]; })) c.by_dim_[p].push_back(s);
        }
    }
    while (!c.by_dim_.empty() && c.by_dim_.back().empty()) c.by_dim_.pop_back();
    c.build_faces();
    return c;
}

Diagnostics validate(const SimplicialComplex& c) {
    Diagnostics d;
    for (int p = 0; p <= c.dimension(); ++p) {
        const auto& list = c.simplices(p);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& s = list[i];
            if (static_cast<int>(s.size()) != p + 1) d.problems.push_back("simplex " + show(s) + " filed under wrong dimension");
            for (std::size_t k = 0; k + 1 < s.size(); ++k) {
                if (s[k] >= s[k + 1]) d.problems.push_back("simplex " + show(s) + " not strictly increasing");
            }
            for (auto v : s) {
                if (v >= c.vertex_count()) d.problems.push_back("simplex " + show(s) + " uses vertex out of range");
            }
            if (i > 0 && !(list[i - 1] < s)) d.problems.push_back("simplex " + show(s) + " duplicated or out of order");
            if (p > 0) {
                for (std::size_t k = 0; k < s.size(); ++k) {
                    auto f = face(s, k);
                    if (!c.contains(f)) d.problems.push_back("face " + show(f) + " absent");
                }
            }
        }
    }
    std::sort(d.problems.begin(), d.problems.end());
    d.problems.erase(std::unique(d.problems.begin(), d.problems.end()), d.problems.end());
    return d;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& c, int p) {
    if (p < 0 || p > c.dimension()) throw std::out_of_range("boundary_matrix: degree out of range");
    if (p == 0) return SparseIntMatrix(0, c.count(0));
    std::vector<MatrixEntry> e;
    e.reserve(c.count(p) * (p + 1));
    for (std::size_t i = 0; i < c.count(p); ++i) {
        for (int k = 0; k <= p; ++k) e.push_back({c.face_index(p, i, k), i, BigInt(k % 2 ? -1 : 1)});
    }
    return SparseIntMatrix::from_triplets(c.count(p - 1), c.count(p), std::move(e));
}

SimplicialPair::SimplicialPair(SimplicialComplex t, SimplicialComplex s) : total(std::move(t)), sub(std::move(s)) {
    if (sub.vertex_count() != total.vertex_count()) {
        if (sub.empty()) {
            sub = SimplicialComplex(total.vertex_count());
        } else {
            throw std::invalid_argument("pair: vertex universes differ");
        }
    }
    if (!sub.is_subcomplex_of(total)) throw std::invalid_argument("pair: sub is not a subcomplex of total");
}

SimplicialPair::SimplicialPair(SimplicialComplex t) : total(std::move(t)), sub(total.vertex_count()) {}

SimplicialTriad::SimplicialTriad(SimplicialComplex t, SimplicialComplex s1, SimplicialComplex s2)
    : total(std::move(t)), sub1(std::move(s1)), sub2(std::move(s2)) {
    if (sub1.empty()) sub1 = SimplicialComplex(total.vertex_count());
    if (sub2.empty()) sub2 = SimplicialComplex(total.vertex_count());
    if (!sub1.is_subcomplex_of(total) || !sub2.is_subcomplex_of(total)) {
        throw std::invalid_argument("triad: pieces are not subcomplexes of total");
    }
}

Simplex SimplicialMap::image(const Simplex& s) const {
    Simplex out;
    for (auto v : s) out.push_back(vertex_images.at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SimplicialMap::is_simplicial() const {
    for (int p = 0; p <= domain->dimension(); ++p) {
        for (const auto& s : domain->simplices(p)) {
            if (!codomain->contains(image(s))) return false;
        }
    }
    return true;
}

bool SimplicialMap::is_isomorphism() const {
    if (!is_simplicial()) return false;
    if (domain->f_vector() != codomain->f_vector()) return false;
    for (int p = 0; p <= domain->dimension(); ++p) {
        std::vector<Simplex> imgs;
        for (const auto& s : domain->simplices(p)) {
            auto t = image(s);
            if (t.size() != s.size()) return false;
            imgs.push_back(std::move(t));
        }
        std::sort(imgs.begin(), imgs.end());
        if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) return false;
    }
    return true;
}

ChainComplexZ integer_chain_complex(const SimplicialPair& pair) {
    const auto& x = pair.total;
    int dim = x.dimension();
    std::vector<std::vector<std::int64_t>> pos(dim + 1);
    std::vector<std::vector<BasisTag>> tags(dim + 1);
    for (int p = 0; p <= dim; ++p) {
        pos[p].assign(x.count(p), -1);
        std::int64_t n = 0;
        for (std::size_t i = 0; i < x.count(p); ++i) {
            if (!pair.sub.contains(x.simplices(p)[i])) {
                pos[p][i] = n++;
                tags[p].push_back(x.simplices(p)[i]);
            }
        }
    }
    std::vector<SparseIntMatrix> ds;
    for (int p = 0; p <= dim; ++p) {
        std::vector<MatrixEntry> e;
        if (p > 0) {
            for (std::size_t i = 0; i < x.count(p); ++i) {
                if (pos[p][i] < 0) continue;
                for (int k = 0; k <= p; ++k) {
                    auto j = pos[p - 1][x.face_index(p, i, k)];
                    if (j >= 0) e.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(pos[p][i]), BigInt(k % 2 ? -1 : 1)});
                }
            }
        }
        ds.push_back(SparseIntMatrix::from_triplets(p == 0 ? 0 : tags[p - 1].size(), tags[p].size(), std::move(e)));
    }
    ChainComplexZ c(0, std::move(ds));
    c.tags = std::move(tags);
    return c;
}

std::vector<HomologyGroup> integer_homology(const SimplicialPair& pair) {
    auto c = integer_chain_complex(pair);
    std::vector<HomologyGroup> out;
    for (auto& [p, h] : homology_all(c)) out.push_back(h);
    return out;
}

std::vector<HomologyGroup> integer_homology(const SimplicialComplex& c) { return integer_homology(SimplicialPair(c)); }

std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& c) {
    auto h = integer_homology(c);
    if (h.empty()) throw std::invalid_argument("reduced homology of the empty complex");
    h[0].free_rank -= 1;
    return h;
}

}  // namespace pdpair
