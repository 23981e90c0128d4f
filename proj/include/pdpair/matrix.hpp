#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pdpair/bigint.hpp"

namespace pdpair {

struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    BigInt value;
};

/// Sparse integer matrix in coordinate form. Entries are kept sorted by
/// (row, col), with no zeros and no repeated coordinates.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Duplicate coordinates are summed, zeros dropped.
    static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<MatrixEntry> entries);
    static SparseIntMatrix from_dense(const std::vector<std::vector<BigInt>>& rows);
    static SparseIntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<MatrixEntry>& entries() const { return entries_; }

    BigInt at(std::size_t r, std::size_t c) const;
    std::vector<std::vector<BigInt>> dense() const;
    SparseIntMatrix transpose() const;
    SparseIntMatrix scaled(const BigInt& k) const;

    /// y = A x
    IntVector apply(const IntVector& x) const;
    /// y = x A (x a row vector)
    IntVector apply_left(const IntVector& x) const;

    /// Sub-block of the given row and column ranges [r0,r1) x [c0,c1).
    SparseIntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    /// Columns listed in `cols`, in that order.
    SparseIntMatrix select_columns(const std::vector<std::size_t>& cols) const;

    std::string to_coordinate_text() const;
    static SparseIntMatrix from_coordinate_text(std::string_view text);

    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
    friend SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b);
    friend SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b);
    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

/// Assembles the block matrix [[a, b], [c, d]]; empty blocks may be given as
/// zero-sized matrices of the right shape.
SparseIntMatrix block_matrix(const SparseIntMatrix& a, const SparseIntMatrix& b,
                             const SparseIntMatrix& c, const SparseIntMatrix& d);

/// Determinant by fraction-free elimination. Intended for small matrices.
BigInt determinant(const SparseIntMatrix& a);

}  // namespace pdpair
