#include "pdpair/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pdpair {

namespace {

bool coord_less(const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<MatrixEntry> entries) {
    SparseIntMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), coord_less);
    for (auto& e : entries) {
        if (e.row >= rows || e.col >= cols) throw std::out_of_range("matrix entry out of range");
        if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
            m.entries_.back().value += e.value;
        } else {
            m.entries_.push_back(std::move(e));
        }
    }
    std::erase_if(m.entries_, [](const MatrixEntry& e) { return e.value == 0; });
    return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<BigInt>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    SparseIntMatrix m(rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t c = 0; c < nc; ++c) {
            if (rows[r][c] != 0) m.entries_.push_back({r, c, rows[r][c]});
        }
    }
    return m;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
    SparseIntMatrix m(n, n);
    m.entries_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, BigInt(1)});
    return m;
}

BigInt SparseIntMatrix::at(std::size_t r, std::size_t c) const {
    MatrixEntry key{r, c, BigInt()};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, coord_less);
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return 0;
}

std::vector<std::vector<BigInt>> SparseIntMatrix::dense() const {
    std::vector<std::vector<BigInt>> d(rows_, std::vector<BigInt>(cols_));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
    SparseIntMatrix t(cols_, rows_);
    t.entries_.reserve(entries_.size());
    for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
    std::sort(t.entries_.begin(), t.entries_.end(), coord_less);
    return t;
}

SparseIntMatrix SparseIntMatrix::scaled(const BigInt& k) const {
    SparseIntMatrix m(rows_, cols_);
    if (k == 0) return m;
    m.entries_ = entries_;
    for (auto& e : m.entries_) e.value *= k;
    return m;
}

IntVector SparseIntMatrix::apply(const IntVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    IntVector y(rows_);
    for (const auto& e : entries_) {
        if (x[e.col] != 0) y[e.row] += e.value * x[e.col];
    }
    return y;
}

IntVector SparseIntMatrix::apply_left(const IntVector& x) const {
    if (x.size() != rows_) throw std::invalid_argument("apply_left: dimension mismatch");
    IntVector y(cols_);
    for (const auto& e : entries_) {
        if (x[e.row] != 0) y[e.col] += x[e.row] * e.value;
    }
    return y;
}

SparseIntMatrix SparseIntMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0,
                                       std::size_t c1) const {
    SparseIntMatrix m(r1 - r0, c1 - c0);
    for (const auto& e : entries_) {
        if (e.row >= r0 && e.row < r1 && e.col >= c0 && e.col < c1) {
            m.entries_.push_back({e.row - r0, e.col - c0, e.value});
        }
    }
    return m;
}

SparseIntMatrix SparseIntMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    std::vector<std::vector<std::size_t>> where(cols_);
    for (std::size_t j = 0; j < cols.size(); ++j) where.at(cols[j]).push_back(j);
    std::vector<MatrixEntry> out;
    for (const auto& e : entries_) {
        for (auto j : where[e.col]) out.push_back({e.row, j, e.value});
    }
    return from_triplets(rows_, cols.size(), std::move(out));
}

std::string SparseIntMatrix::to_coordinate_text() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
    for (const auto& e : entries_) os << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
    return os.str();
}

SparseIntMatrix SparseIntMatrix::from_coordinate_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw std::invalid_argument("matrix text: bad header");
    std::vector<MatrixEntry> entries;
    entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t r = 0, c = 0;
        std::string v;
        if (!(is >> r >> c >> v)) {
            throw std::invalid_argument("matrix text: truncated at entry " + std::to_string(k));
        }
        BigInt value;
        if (value.set_str(v, 10) != 0) throw std::invalid_argument("matrix text: bad integer " + v);
        entries.push_back({r, c, value});
    }
    return from_triplets(rows, cols, std::move(entries));
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    // row offsets of b
    std::vector<std::size_t> start(b.rows_ + 1, 0);
    for (const auto& e : b.entries_) ++start[e.row + 1];
    for (std::size_t i = 0; i < b.rows_; ++i) start[i + 1] += start[i];

    SparseIntMatrix c(a.rows_, b.cols_);
    std::map<std::size_t, BigInt> acc;
    std::size_t k = 0;
    while (k < a.entries_.size()) {
        std::size_t row = a.entries_[k].row;
        acc.clear();
        for (; k < a.entries_.size() && a.entries_[k].row == row; ++k) {
            const auto& e = a.entries_[k];
            for (std::size_t t = start[e.col]; t < start[e.col + 1]; ++t) {
                acc[b.entries_[t].col] += e.value * b.entries_[t].value;
            }
        }
        for (auto& [col, v] : acc) {
            if (v != 0) c.entries_.push_back({row, col, std::move(v)});
        }
    }
    return c;
}

SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    std::vector<MatrixEntry> all = a.entries_;
    all.insert(all.end(), b.entries_.begin(), b.entries_.end());
    return SparseIntMatrix::from_triplets(a.rows_, a.cols_, std::move(all));
}

SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a + b.scaled(-1);
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
        const auto& x = a.entries_[i];
        const auto& y = b.entries_[i];
        if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
    }
    return true;
}

SparseIntMatrix block_matrix(const SparseIntMatrix& a, const SparseIntMatrix& b,
                             const SparseIntMatrix& c, const SparseIntMatrix& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
        throw std::invalid_argument("block_matrix: shape mismatch");
    }
    std::size_t r0 = a.rows(), c0 = a.cols();
    std::vector<MatrixEntry> all;
    all.reserve(a.nnz() + b.nnz() + c.nnz() + d.nnz());
    for (const auto& e : a.entries()) all.push_back(e);
    for (const auto& e : b.entries()) all.push_back({e.row, e.col + c0, e.value});
    for (const auto& e : c.entries()) all.push_back({e.row + r0, e.col, e.value});
    for (const auto& e : d.entries()) all.push_back({e.row + r0, e.col + c0, e.value});
    return SparseIntMatrix::from_triplets(r0 + c.rows(), c0 + b.cols(), std::move(all));
}

BigInt determinant(const SparseIntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    auto m = a.dense();
    std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    // Bareiss
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return n == 0 ? BigInt(1) : BigInt(sign * m[n - 1][n - 1]);
}

}  // namespace pdpair
