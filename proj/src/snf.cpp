#include "pdpair/snf.hpp"

#include <atomic>
#include <stdexcept>

#include "detail/sparse_elimination.hpp"

namespace pdpair {

namespace {

using detail::SpVec;

std::atomic<bool> g_self_check{false};

constexpr std::size_t kDenseLimit = 64;

detail::EliminationOutput eliminate_sparse(const SparseIntMatrix& a, bool tu, bool tui, bool tv, bool tvi) {
    try {
        return detail::SparseEliminator<std::int64_t>(a, tu, tui, tv, tvi).run();
    } catch (const detail::Overflow&) {
        return detail::SparseEliminator<BigInt>(a, tu, tui, tv, tvi).run();
    }
}

SparseIntMatrix rows_to_matrix(const std::vector<SpVec<BigInt>>& rows, std::size_t ncols) {
    std::vector<MatrixEntry> e;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, v] : rows[r]) e.push_back({r, c, v});
    }
    return SparseIntMatrix::from_triplets(rows.size(), ncols, std::move(e));
}

SparseIntMatrix cols_to_matrix(const std::vector<SpVec<BigInt>>& cols, std::size_t nrows) {
    std::vector<MatrixEntry> e;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto& [r, v] : cols[c]) e.push_back({r, c, v});
    }
    return SparseIntMatrix::from_triplets(nrows, cols.size(), std::move(e));
}

SpVec<BigInt> comb(const BigInt& a, const SpVec<BigInt>& x, const BigInt& b, const SpVec<BigInt>& y) {
    return detail::lincomb(a, x, b, y);
}

SNFResult assemble_sparse(const SparseIntMatrix& a, const SnfOptions& opt) {
    auto out = eliminate_sparse(a, opt.want_u, opt.want_u_inverse, opt.want_v, opt.want_v_inverse);
    const std::size_t m = out.rows, n = out.cols;

    // units first, then the rest, each group in elimination order
    std::vector<detail::Pivot> piv;
    for (auto& p : out.pivots) {
        if (abs(p.value) == 1) piv.push_back(p);
    }
    for (auto& p : out.pivots) {
        if (abs(p.value) != 1) piv.push_back(p);
    }
    const std::size_t k = piv.size();

    std::vector<std::uint32_t> row_perm, col_perm;
    std::vector<char> row_used(m, 0), col_used(n, 0);
    for (auto& p : piv) {
        row_perm.push_back(p.row);
        col_perm.push_back(p.col);
        row_used[p.row] = 1;
        col_used[p.col] = 1;
    }
    for (std::uint32_t r = 0; r < m; ++r) {
        if (!row_used[r]) row_perm.push_back(r);
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        if (!col_used[c]) col_perm.push_back(c);
    }

    auto permute = [](std::vector<SpVec<BigInt>>& v, const std::vector<std::uint32_t>& perm) {
        if (v.empty()) return;
        std::vector<SpVec<BigInt>> w(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) w[i] = std::move(v[perm[i]]);
        v = std::move(w);
    };
    // Rows of U and columns of U^-1 follow the row permutation; columns of V
    // and rows of V^-1 the column permutation.
    permute(out.u_rows, row_perm);
    permute(out.ui_cols, row_perm);
    permute(out.v_cols, col_perm);
    permute(out.vi_rows, col_perm);

    std::vector<BigInt> d(k);
    for (std::size_t i = 0; i < k; ++i) {
        d[i] = piv[i].value;
        if (d[i] < 0) {
            d[i] = -d[i];
            if (!out.u_rows.empty()) for (auto& e : out.u_rows[i]) e.second = -e.second;
            if (!out.ui_cols.empty()) for (auto& e : out.ui_cols[i]) e.second = -e.second;
        }
    }

    // gcd/lcm sweep over the non-unit part to obtain the divisibility chain
    std::size_t first = 0;
    while (first < k && d[first] == 1) ++first;
    for (std::size_t i = first; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (detail::divides(d[i], d[j])) continue;
            BigInt g, s, t;
            detail::xgcd(d[i], d[j], g, s, t);
            BigInt ag = d[i] / g, bg = d[j] / g;
            if (!out.u_rows.empty()) {
                auto ri = comb(s, out.u_rows[i], t, out.u_rows[j]);
                out.u_rows[j] = comb(BigInt(-bg), out.u_rows[i], ag, out.u_rows[j]);
                out.u_rows[i] = std::move(ri);
            }
            if (!out.ui_cols.empty()) {
                auto ci = comb(ag, out.ui_cols[i], bg, out.ui_cols[j]);
                out.ui_cols[j] = comb(BigInt(-t), out.ui_cols[i], s, out.ui_cols[j]);
                out.ui_cols[i] = std::move(ci);
            }
            if (!out.v_cols.empty()) {
                auto ci = comb(BigInt(1), out.v_cols[i], BigInt(1), out.v_cols[j]);
                out.v_cols[j] = comb(BigInt(-t * bg), out.v_cols[i], BigInt(s * ag), out.v_cols[j]);
                out.v_cols[i] = std::move(ci);
            }
            if (!out.vi_rows.empty()) {
                auto ri = comb(BigInt(s * ag), out.vi_rows[i], BigInt(t * bg), out.vi_rows[j]);
                out.vi_rows[j] = comb(BigInt(-1), out.vi_rows[i], BigInt(1), out.vi_rows[j]);
                out.vi_rows[i] = std::move(ri);
            }
            d[j] = d[i] * bg;
            d[i] = g;
        }
    }

    SNFResult res;
    std::vector<MatrixEntry> de;
    for (std::size_t i = 0; i < k; ++i) de.push_back({i, i, d[i]});
    res.D = SparseIntMatrix::from_triplets(m, n, std::move(de));
    res.diagonal = std::move(d);
    if (opt.want_u) res.U = rows_to_matrix(out.u_rows, m);
    if (opt.want_u_inverse) res.U_inverse = cols_to_matrix(out.ui_cols, m);
    if (opt.want_v) res.V = cols_to_matrix(out.v_cols, n);
    if (opt.want_v_inverse) res.V_inverse = rows_to_matrix(out.vi_rows, n);
    return res;
}

// Classic dense reduction: smallest pivot to the corner, Euclidean clearing,
// then a divisibility repair step.
SNFResult assemble_dense(const SparseIntMatrix& a, const SnfOptions& opt) {
    using Mat = std::vector<std::vector<BigInt>>;
    const std::size_t m = a.rows(), n = a.cols();
    Mat A = a.dense();
    auto ident = [](std::size_t k) {
        Mat I(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i) I[i][i] = 1;
        return I;
    };
    Mat U = ident(m), Ui = ident(m), V = ident(n), Vi = ident(n);

    auto row_add = [&](std::size_t t, std::size_t s, const BigInt& q) {  // R_t += q R_s
        for (std::size_t j = 0; j < n; ++j) A[t][j] += q * A[s][j];
        for (std::size_t j = 0; j < m; ++j) U[t][j] += q * U[s][j];
        for (std::size_t i = 0; i < m; ++i) Ui[i][s] -= q * Ui[i][t];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(A[i], A[j]);
        std::swap(U[i], U[j]);
        for (std::size_t r = 0; r < m; ++r) std::swap(Ui[r][i], Ui[r][j]);
    };
    auto row_neg = [&](std::size_t i) {
        for (auto& x : A[i]) x = -x;
        for (auto& x : U[i]) x = -x;
        for (std::size_t r = 0; r < m; ++r) Ui[r][i] = -Ui[r][i];
    };
    auto col_add = [&](std::size_t t, std::size_t s, const BigInt& q) {  // C_t += q C_s
        for (std::size_t i = 0; i < m; ++i) A[i][t] += q * A[i][s];
        for (std::size_t i = 0; i < n; ++i) V[i][t] += q * V[i][s];
        for (std::size_t j = 0; j < n; ++j) Vi[s][j] -= q * Vi[t][j];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m; ++r) std::swap(A[r][i], A[r][j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
        std::swap(Vi[i], Vi[j]);
    };

    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == m) break;
        row_swap(t, pi);
        col_swap(t, pj);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                row_add(i, t, BigInt(-q));
                if (A[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                col_add(j, t, BigInt(-q));
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (A[i][t] != 0 && abs(A[i][t]) < abs(A[bi][bj])) { bi = i; bj = t; }
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A[t][j] != 0 && abs(A[t][j]) < abs(A[bi][bj])) { bi = t; bj = j; }
                }
                row_swap(t, bi);
                col_swap(t, bj);
                continue;
            }
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (!detail::divides(A[t][t], A[i][j])) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == m) break;
            row_add(t, bad, BigInt(1));
        }
        if (A[t][t] < 0) row_neg(t);
        diag.push_back(A[t][t]);
    }

    SNFResult res;
    res.D = SparseIntMatrix::from_dense(A);
    if (m == 0 || n == 0) res.D = SparseIntMatrix(m, n);
    res.diagonal = std::move(diag);
    auto to_sparse = [](const Mat& x, std::size_t r, std::size_t c) {
        if (r == 0 || c == 0) return SparseIntMatrix(r, c);
        return SparseIntMatrix::from_dense(x);
    };
    if (opt.want_u) res.U = to_sparse(U, m, m);
    if (opt.want_u_inverse) res.U_inverse = to_sparse(Ui, m, m);
    if (opt.want_v) res.V = to_sparse(V, n, n);
    if (opt.want_v_inverse) res.V_inverse = to_sparse(Vi, n, n);
    return res;
}

}  // namespace

void set_snf_self_check(bool on) { g_self_check = on; }
bool snf_self_check() { return g_self_check; }

SNFResult smith_normal_form(const SparseIntMatrix& a, const SnfOptions& options) {
    bool dense = options.engine == SnfEngine::dense ||
                 (options.engine == SnfEngine::automatic && a.rows() <= kDenseLimit && a.cols() <= kDenseLimit);
    SNFResult r = dense ? assemble_dense(a, options) : assemble_sparse(a, options);
    if (g_self_check && !check_snf(a, r)) throw std::logic_error("smith_normal_form: postcondition violated");
    return r;
}

std::vector<BigInt> invariant_factors(const SparseIntMatrix& a) {
    auto out = eliminate_sparse(a, false, false, false, false);
    std::vector<BigInt> units, rest;
    for (auto& p : out.pivots) {
        BigInt v = abs(p.value);
        (v == 1 ? units : rest).push_back(v);
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (detail::divides(rest[i], rest[j])) continue;
            BigInt g;
            mpz_gcd(g.get_mpz_t(), rest[i].get_mpz_t(), rest[j].get_mpz_t());
            rest[j] = rest[i] / g * rest[j];
            rest[i] = g;
        }
    }
    units.insert(units.end(), rest.begin(), rest.end());
    return units;
}

std::size_t integer_rank(const SparseIntMatrix& a) {
    return eliminate_sparse(a, false, false, false, false).pivots.size();
}

bool check_snf(const SparseIntMatrix& a, const SNFResult& r) {
    const std::size_t m = a.rows(), n = a.cols();
    if (r.D.rows() != m || r.D.cols() != n) return false;
    for (const auto& e : r.D.entries()) {
        if (e.row != e.col || e.row >= r.diagonal.size() || e.value != r.diagonal[e.row]) return false;
    }
    if (r.D.nnz() != r.diagonal.size()) return false;
    for (std::size_t i = 0; i < r.diagonal.size(); ++i) {
        if (r.diagonal[i] <= 0) return false;
        if (i > 0 && !detail::divides(r.diagonal[i - 1], r.diagonal[i])) return false;
    }
    bool have_all = r.U.rows() == m && r.U.cols() == m && r.V.rows() == n && r.V.cols() == n;
    if (have_all && !(r.U * a * r.V == r.D)) return false;
    if (r.U_inverse.rows() == m && r.U.rows() == m && !(r.U * r.U_inverse == SparseIntMatrix::identity(m))) return false;
    if (r.V_inverse.rows() == n && r.V.rows() == n && !(r.V * r.V_inverse == SparseIntMatrix::identity(n))) return false;
    return true;
}

std::optional<IntVector> solve_integer(const SparseIntMatrix& a, const IntVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
    SnfOptions opt;
    opt.want_u_inverse = false;
    opt.want_v_inverse = false;
    auto r = smith_normal_form(a, opt);
    // D y = U b, x = V y
    IntVector ub = r.U.apply(b);
    IntVector y(a.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < r.diagonal.size()) {
            if (!detail::divides(r.diagonal[i], ub[i])) return std::nullopt;
            y[i] = ub[i] / r.diagonal[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return r.V.apply(y);
}

bool in_integer_image(const SparseIntMatrix& a, const IntVector& b) { return solve_integer(a, b).has_value(); }

}  // namespace pdpair
