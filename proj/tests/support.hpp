#pragma once

// Shared helpers for the test binaries: random integer data and independent
// oracles that do not go through the code paths they are used to check.

#include <memory>
#include <random>
#include <vector>

#include "pdpair/chain.hpp"
#include "pdpair/snf.hpp"

namespace pdpair::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline SparseIntMatrix random_sparse(Rng& rng, std::size_t rows, std::size_t cols, double density, long bound) {
    std::vector<MatrixEntry> e;
    std::bernoulli_distribution keep(density);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (keep(rng)) e.push_back({r, c, BigInt(uniform(rng, -bound, bound))});
        }
    }
    return SparseIntMatrix::from_triplets(rows, cols, std::move(e));
}

/// Random unimodular matrix with its inverse, built from elementary moves.
inline std::pair<SparseIntMatrix, SparseIntMatrix> random_unimodular(Rng& rng, std::size_t n, int moves) {
    auto m = SparseIntMatrix::identity(n).dense();
    auto inv = m;
    for (int k = 0; k < moves && n > 1; ++k) {
        std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
        if (i == j) continue;
        long q = uniform(rng, -2, 2);
        if (uniform(rng, 0, 5) == 0) {
            // row negation
            for (auto& x : m[i]) x = -x;
            for (auto& row : inv) row[i] = -row[i];
            continue;
        }
        for (std::size_t c = 0; c < n; ++c) m[i][c] += q * m[j][c];
        for (std::size_t r = 0; r < n; ++r) inv[r][j] -= q * inv[r][i];
    }
    if (n == 0) return {SparseIntMatrix(0, 0), SparseIntMatrix(0, 0)};
    return {SparseIntMatrix::from_dense(m), SparseIntMatrix::from_dense(inv)};
}

/// A chain complex that is a sum of elementary pieces (Z in one degree, or
/// Z --k--> Z) written in randomly changed bases. Degrees [0, top].
struct RandomComplex {
    ChainComplexZ complex;
    std::vector<HomologyGroup> expected;  // known by construction (before normalisation)
};

inline ChainComplexZ conjugate_by(const ChainComplexZ& c, const std::vector<SparseIntMatrix>& g,
                                  const std::vector<SparseIntMatrix>& ginv) {
    // new basis e' = g e: d' = g_{p-1} d g_p^{-1}
    std::vector<SparseIntMatrix> ds;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        std::size_t i = p - c.lo();
        if (p == c.lo()) {
            ds.emplace_back(0, c.rank(p));
        } else {
            ds.push_back(g[i - 1] * c.boundary(p) * ginv[i]);
        }
    }
    return ChainComplexZ(c.lo(), std::move(ds));
}

inline ChainComplexZ random_complex(Rng& rng, int top, std::size_t max_pieces, std::vector<std::size_t>* ranks_out = nullptr) {
    std::vector<std::vector<MatrixEntry>> entries(top + 1);
    std::vector<std::size_t> rank(top + 1, 0);
    std::size_t pieces = uniform(rng, 0, max_pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
        int p = uniform(rng, 0, top);
        if (p == 0 || uniform(rng, 0, 2) == 0) {
            ++rank[p];
        } else {
            long w = uniform(rng, -4, 4);
            if (w == 0) w = 1;
            entries[p].push_back({rank[p - 1], rank[p], BigInt(w)});
            ++rank[p];
            ++rank[p - 1];
        }
    }
    std::vector<SparseIntMatrix> ds;
    for (int p = 0; p <= top; ++p) {
        ds.push_back(SparseIntMatrix::from_triplets(p == 0 ? 0 : rank[p - 1], rank[p], entries[p]));
    }
    ChainComplexZ c(0, std::move(ds));
    std::vector<SparseIntMatrix> g, gi;
    for (int p = 0; p <= top; ++p) {
        auto [u, ui] = random_unimodular(rng, rank[p], 3 * static_cast<int>(rank[p]) + 2);
        g.push_back(u);
        gi.push_back(ui);
    }
    if (ranks_out) *ranks_out = rank;
    return conjugate_by(c, g, gi);
}

/// Quasi-isomorphism decided without mapping cones: abstract isomorphism of
/// homology groups plus surjectivity of f_* by lifting each target generator.
inline bool quasi_iso_by_lifting(const ChainMap& f) {
    for (int p = f.lo(); p <= f.hi(); ++p) {
        if (!(homology(f.source(), p) == homology(f.target(), p))) return false;
        HomologyBasis tb(f.target(), p);
        if (tb.group().is_zero()) continue;
        // kernel of d_p on the source, via the column space of V beyond the rank
        const auto& ds = f.source().boundary(p);
        auto s = smith_normal_form(ds);
        std::vector<std::size_t> kc;
        for (std::size_t j = s.rank(); j < ds.cols(); ++j) kc.push_back(j);
        auto lifted = f.component(p) * s.V.select_columns(kc);
        const auto& dt = f.target().boundary(p + 1);
        std::vector<MatrixEntry> me;
        for (const auto& e : lifted.entries()) me.push_back(e);
        for (const auto& e : dt.entries()) me.push_back({e.row, e.col + lifted.cols(), e.value});
        auto system = SparseIntMatrix::from_triplets(f.target().rank(p), lifted.cols() + dt.cols(), me);
        std::vector<IntVector> gens = tb.free_generators();
        for (const auto& t : tb.torsion_generators()) gens.push_back(t);
        for (const auto& g : gens) {
            if (!in_integer_image(system, g)) return false;
        }
    }
    return true;
}

/// Block sum of two chain maps.
inline ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
    auto sum = [](const ChainComplexZ& a, const ChainComplexZ& b) {
        int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
        std::vector<SparseIntMatrix> ds;
        for (int p = lo; p <= hi; ++p) {
            auto d = block_matrix(a.boundary(p), SparseIntMatrix(a.rank(p - 1), b.rank(p)),
                                  SparseIntMatrix(b.rank(p - 1), a.rank(p)), b.boundary(p));
            if (p == lo) d = SparseIntMatrix(0, d.cols());
            ds.push_back(d);
        }
        return std::make_shared<const ChainComplexZ>(lo, ds);
    };
    auto s = sum(f.source(), g.source());
    auto t = sum(f.target(), g.target());
    std::map<int, SparseIntMatrix> comps;
    for (int p = s->lo(); p <= s->hi(); ++p) {
        comps.emplace(p, block_matrix(f.component(p), SparseIntMatrix(f.target().rank(p), g.source().rank(p)),
                                      SparseIntMatrix(g.target().rank(p), f.source().rank(p)), g.component(p)));
    }
    return ChainMap(s, t, comps);
}

}  // namespace pdpair::testing
