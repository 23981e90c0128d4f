#include "pdpair/cover.hpp"

#include <stdexcept>

namespace pdpair {

namespace {

Simplex lift(const CoverPair& c, const Simplex& s, std::uint32_t sheet, const std::vector<std::uint32_t>& edge_of_first) {
    Simplex out{static_cast<Vertex>(s[0] * c.sheets + sheet)};
    for (std::size_t i = 1; i < s.size(); ++i) {
        out.push_back(static_cast<Vertex>(s[i] * c.sheets + c.edge_permutations[edge_of_first[i]][sheet]));
    }
    return out;
}

std::vector<std::uint32_t> first_edges(const SimplicialComplex& x, const Simplex& s) {
    std::vector<std::uint32_t> e(s.size(), 0);
    for (std::size_t i = 1; i < s.size(); ++i) e[i] = static_cast<std::uint32_t>(edge_index(x, s, 0, i));
    return e;
}

std::vector<Simplex> lifts_of(const CoverPair& c, const SimplicialComplex& from) {
    std::vector<Simplex> out;
    for (const auto& f : from.facets()) {
        auto e = first_edges(c.base.total, f);
        for (std::uint32_t s = 0; s < c.sheets; ++s) out.push_back(lift(c, f, s, e));
    }
    return out;
}

}  // namespace

CoverPair build_cover(const SimplicialPair& pair, const GroupPresentation& p, const CosetTable& t) {
    if (auto why = table_defect(p, t)) throw std::invalid_argument("build_cover: " + *why);
    if (p.edge_words.size() != pair.total.count(1)) throw std::invalid_argument("build_cover: presentation mismatch");
    CoverPair c;
    c.base = pair;
    c.sheets = t.degree;
    for (const auto& w : p.edge_words) {
        std::vector<std::uint32_t> perm(t.degree);
        for (std::uint32_t s = 0; s < t.degree; ++s) perm[s] = t.act(s, w);
        c.edge_permutations.push_back(std::move(perm));
    }
    const std::size_t n = pair.total.vertex_count() * c.sheets;
    auto total = SimplicialComplex::from_facets(n, lifts_of(c, pair.total));
    auto sub = pair.sub.empty() ? SimplicialComplex(n) : SimplicialComplex::from_facets(n, lifts_of(c, pair.sub));
    c.total = SimplicialPair(std::move(total), std::move(sub));
    c.projection.domain = std::make_shared<const SimplicialComplex>(c.total.total);
    c.projection.codomain = std::make_shared<const SimplicialComplex>(pair.total);
    c.projection.vertex_images.resize(n);
    for (std::size_t v = 0; v < n; ++v) c.projection.vertex_images[v] = static_cast<Vertex>(v / c.sheets);
    return c;
}

ChainMap transfer_chain(const CoverPair& cover, const TwistedComplex& base, const TwistedComplex& cover_space) {
    const auto& x = base.total();
    const std::size_t r = base.rank();
    std::map<int, SparseIntMatrix> comps;
    for (int p = 0; p <= x.dimension(); ++p) {
        std::vector<MatrixEntry> e;
        for (std::size_t c = 0; c < base.cells(p); ++c) {
            const Simplex& s = x.simplices(p)[base.simplex(p, c)];
            auto edges = first_edges(x, s);
            for (std::uint32_t sheet = 0; sheet < cover.sheets; ++sheet) {
                auto i = cover_space.total().index_of(lift(cover, s, sheet, edges));
                if (!i) throw std::logic_error("transfer: lift missing from cover");
                auto d = cover_space.cell(p, *i);
                if (!d) continue;
                for (std::size_t b = 0; b < r; ++b) e.push_back({*d * r + b, c * r + b, BigInt(1)});
            }
        }
        comps.emplace(p, SparseIntMatrix::from_triplets(cover_space.realized().rank(p), base.realized().rank(p),
                                                        std::move(e)));
    }
    ChainMap f(base.realized_ptr(), cover_space.realized_ptr(), std::move(comps));
    if (!f.is_chain_map()) throw std::logic_error("transfer: not a chain map");
    return f;
}

ChainMap projection_chain(const CoverPair& cover, const TwistedComplex& cover_space, const TwistedComplex& base) {
    const auto& y = cover_space.total();
    const std::size_t r = base.rank();
    std::map<int, SparseIntMatrix> comps;
    for (int p = 0; p <= y.dimension(); ++p) {
        std::vector<MatrixEntry> e;
        for (std::size_t c = 0; c < cover_space.cells(p); ++c) {
            auto i = base.total().index_of(cover.projection.image(y.simplices(p)[cover_space.simplex(p, c)]));
            if (!i) throw std::logic_error("projection: image missing from base");
            auto d = base.cell(p, *i);
            if (!d) continue;
            for (std::size_t b = 0; b < r; ++b) e.push_back({*d * r + b, c * r + b, BigInt(1)});
        }
        comps.emplace(p, SparseIntMatrix::from_triplets(base.realized().rank(p), cover_space.realized().rank(p),
                                                        std::move(e)));
    }
    ChainMap f(cover_space.realized_ptr(), base.realized_ptr(), std::move(comps));
    if (!f.is_chain_map()) throw std::logic_error("projection: not a chain map");
    return f;
}

}  // namespace pdpair
