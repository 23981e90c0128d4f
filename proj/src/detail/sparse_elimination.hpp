#pragma once

// Sparse unimodular elimination to a diagonal matrix. Pivots are eliminated
// one at a time with row and column operations; the transforms are tracked
// as sparse rows (U, V^-1) and sparse columns (U^-1, V).

#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "detail/int_ops.hpp"
#include "pdpair/matrix.hpp"

namespace pdpair::detail {

template <class Int>
using SpVec = std::vector<std::pair<std::uint32_t, Int>>;

template <class Int>
SpVec<Int> lincomb(const Int& a, const SpVec<Int>& x, const Int& b, const SpVec<Int>& y) {
    SpVec<Int> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            if (a != 0) out.emplace_back(x[i].first, mul(a, x[i].second));
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            if (b != 0) out.emplace_back(y[j].first, mul(b, y[j].second));
            ++j;
        } else {
            Int v = add(mul(a, x[i].second), mul(b, y[j].second));
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class Int>
const Int* find_entry(const SpVec<Int>& v, std::uint32_t idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, std::uint32_t k) { return e.first < k; });
    if (it != v.end() && it->first == idx) return &it->second;
    return nullptr;
}

template <class Int>
SpVec<Int> unit_vectors_identity(std::uint32_t i) {
    SpVec<Int> v;
    v.emplace_back(i, Int(1));
    return v;
}

struct Pivot {
    std::uint32_t row, col;
    BigInt value;
};

struct EliminationOutput {
    std::size_t rows = 0, cols = 0;
    std::vector<Pivot> pivots;
    // transforms in BigInt form; empty when not tracked
    std::vector<SpVec<BigInt>> u_rows, ui_cols, v_cols, vi_rows;
};

template <class Int>
class SparseEliminator {
public:
    SparseEliminator(const SparseIntMatrix& a, bool tu, bool tui, bool tv, bool tvi)
        : m_(a.rows()), n_(a.cols()), track_u_(tu), track_ui_(tui), track_v_(tv), track_vi_(tvi) {
        rows_.resize(m_);
        col_rows_.resize(n_);
        col_count_.assign(n_, 0);
        col_done_.assign(n_, 0);
        row_done_.assign(m_, 0);
        for (const auto& e : a.entries()) {
            rows_[e.row].emplace_back(static_cast<std::uint32_t>(e.col), from_big<Int>(e.value));
            col_rows_[e.col].push_back(static_cast<std::uint32_t>(e.row));
            ++col_count_[e.col];
        }
        if (track_u_) init_identity(u_rows_, m_);
        if (track_ui_) init_identity(ui_cols_, m_);
        if (track_v_) init_identity(v_cols_, n_);
        if (track_vi_) init_identity(vi_rows_, n_);
    }

    EliminationOutput run() {
        for (std::uint32_t c = 0; c < n_; ++c) {
            if (col_count_[c] > 0) heap_.emplace(col_count_[c], c);
        }
        unit_phase();
        general_phase();

        EliminationOutput out;
        out.rows = m_;
        out.cols = n_;
        for (auto& p : pivots_) out.pivots.push_back({p.row, p.col, to_big(p.value)});
        auto convert = [](std::vector<SpVec<Int>>& src, std::vector<SpVec<BigInt>>& dst) {
            dst.resize(src.size());
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i].reserve(src[i].size());
                for (auto& [k, v] : src[i]) dst[i].emplace_back(k, to_big(v));
                SpVec<Int>().swap(src[i]);
            }
        };
        if (track_u_) convert(u_rows_, out.u_rows);
        if (track_ui_) convert(ui_cols_, out.ui_cols);
        if (track_v_) convert(v_cols_, out.v_cols);
        if (track_vi_) convert(vi_rows_, out.vi_rows);
        return out;
    }

private:
    struct LocalPivot {
        std::uint32_t row, col;
        Int value;
    };

    static void init_identity(std::vector<SpVec<Int>>& v, std::size_t n) {
        v.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) v[i].emplace_back(i, Int(1));
    }

    Int entry(std::uint32_t r, std::uint32_t c) const {
        const Int* p = find_entry(rows_[r], c);
        return p ? *p : Int(0);
    }

    void touch(std::uint32_t c) {
        if (!col_done_[c] && col_count_[c] > 0) heap_.emplace(col_count_[c], c);
    }

    // Replace row r, keeping column bookkeeping exact.
    void replace_row(std::uint32_t r, SpVec<Int>&& fresh) {
        const auto& old = rows_[r];
        std::size_t i = 0, j = 0;
        while (i < old.size() || j < fresh.size()) {
            if (j == fresh.size() || (i < old.size() && old[i].first < fresh[j].first)) {
                --col_count_[old[i].first];
                touch(old[i].first);
                ++i;
            } else if (i == old.size() || fresh[j].first < old[i].first) {
                ++col_count_[fresh[j].first];
                col_rows_[fresh[j].first].push_back(r);
                touch(fresh[j].first);
                ++j;
            } else {
                ++i;
                ++j;
            }
        }
        rows_[r] = std::move(fresh);
    }

    void set_entry(std::uint32_t r, std::uint32_t c, Int value) {
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::uint32_t k) { return e.first < k; });
        bool present = it != row.end() && it->first == c;
        if (value == 0) {
            if (present) {
                row.erase(it);
                --col_count_[c];
                touch(c);
            }
        } else if (present) {
            it->second = std::move(value);
        } else {
            row.insert(it, {c, std::move(value)});
            ++col_count_[c];
            col_rows_[c].push_back(r);
            touch(c);
        }
    }

    std::vector<std::uint32_t> live_rows(std::uint32_t c) {
        auto& list = col_rows_[c];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::erase_if(list, [&](std::uint32_t r) { return find_entry(rows_[r], c) == nullptr; });
        return list;
    }

    // R_t += q R_s
    void row_axpy(std::uint32_t t, std::uint32_t s, const Int& q) {
        replace_row(t, lincomb(Int(1), rows_[t], q, rows_[s]));
        if (track_u_) u_rows_[t] = lincomb(Int(1), u_rows_[t], q, u_rows_[s]);
        if (track_ui_) ui_cols_[s] = lincomb(Int(1), ui_cols_[s], Int(-q), ui_cols_[t]);
    }


    // C_t += q C_s
    void col_axpy(std::uint32_t t, std::uint32_t s, const Int& q) {
        for (auto r : live_rows(s)) {
            set_entry(r, t, add(entry(r, t), mul(q, entry(r, s))));
        }
        if (track_v_) v_cols_[t] = lincomb(Int(1), v_cols_[t], q, v_cols_[s]);
        if (track_vi_) vi_rows_[s] = lincomb(Int(1), vi_rows_[s], Int(-q), vi_rows_[t]);
    }


    // Euclidean clearing of row r and column c: the pivot migrates to the
    // smallest entry until every other entry of its row and column is zero.
    void eliminate(std::uint32_t r, std::uint32_t c) {
        while (true) {
            while (true) {
                auto rs = live_rows(c);
                for (auto r2 : rs) {
                    if (abs_value(entry(r2, c)) < abs_value(entry(r, c))) r = r2;
                }
                bool remainder = false;
                for (auto r2 : rs) {
                    if (r2 == r) continue;
                    Int p = entry(r, c), a = entry(r2, c);
                    row_axpy(r2, r, Int(-nearest_quotient(a, p)));
                    if (find_entry(rows_[r2], c)) remainder = true;
                }
                if (!remainder) break;
            }
            if (rows_[r].size() <= 1) break;
            bool moved = false;
            while (true) {
                std::vector<std::uint32_t> cols;
                for (const auto& e : rows_[r]) {
                    cols.push_back(e.first);
                    if (abs_value(e.second) < abs_value(entry(r, c))) {
                        c = e.first;
                        moved = true;
                    }
                }
                bool remainder = false;
                for (auto c2 : cols) {
                    if (c2 == c) continue;
                    Int p = entry(r, c), b = entry(r, c2);
                    col_axpy(c2, c, Int(-nearest_quotient(b, p)));
                    if (find_entry(rows_[r], c2)) remainder = true;
                }
                if (!remainder) break;
            }
            if (!moved || col_count_[c] <= 1) break;
        }
        pivots_.push_back({r, c, entry(r, c)});
        rows_[r].clear();
        col_count_[c] = 0;
        col_done_[c] = 1;
        row_done_[r] = 1;
    }

    void unit_phase() {
        while (!heap_.empty()) {
            auto [cnt, c] = heap_.top();
            heap_.pop();
            if (col_done_[c] || cnt != col_count_[c] || cnt == 0) continue;
            std::uint32_t best = UINT32_MAX;
            std::size_t best_len = SIZE_MAX;
            for (auto r : live_rows(c)) {
                const Int* v = find_entry(rows_[r], c);
                if (abs_value(*v) != 1) continue;
                if (rows_[r].size() < best_len) {
                    best_len = rows_[r].size();
                    best = r;
                }
            }
            if (best != UINT32_MAX) eliminate(best, c);
        }
    }

    void general_phase() {
        while (true) {
            bool found = false;
            std::tuple<Int, std::size_t, std::uint32_t, std::uint32_t> best;
            for (std::uint32_t r = 0; r < m_; ++r) {
                if (row_done_[r]) continue;
                for (const auto& [c, v] : rows_[r]) {
                    std::tuple<Int, std::size_t, std::uint32_t, std::uint32_t> key{
                        abs_value(v), rows_[r].size() + col_count_[c], r, c};
                    if (!found || key < best) {
                        best = key;
                        found = true;
                    }
                }
            }
            if (!found) break;
            eliminate(std::get<2>(best), std::get<3>(best));
        }
    }

    std::size_t m_, n_;
    bool track_u_, track_ui_, track_v_, track_vi_;
    std::vector<SpVec<Int>> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::uint32_t> col_count_;
    std::vector<char> col_done_, row_done_;
    std::vector<SpVec<Int>> u_rows_, ui_cols_, v_cols_, vi_rows_;
    std::vector<LocalPivot> pivots_;
    using HeapItem = std::pair<std::uint32_t, std::uint32_t>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
};

}  // namespace pdpair::detail
