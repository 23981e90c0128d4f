#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdpair/matrix.hpp"

namespace pdpair {

enum class SnfEngine { automatic, sparse, dense };

struct SnfOptions {
    bool want_u = true;
    bool want_u_inverse = true;
    bool want_v = true;
    bool want_v_inverse = true;
    SnfEngine engine = SnfEngine::automatic;
};

/// U A V = D with U, V unimodular and D diagonal, d1 | d2 | ... .
/// Transforms that were not requested are left as 0x0 matrices.
struct SNFResult {
    SparseIntMatrix U, U_inverse, V, V_inverse, D;
    std::vector<BigInt> diagonal;  // nonzero diagonal entries, in order
    std::size_t rank() const { return diagonal.size(); }
};

SNFResult smith_normal_form(const SparseIntMatrix& a, const SnfOptions& options = {});

/// Nonzero invariant factors (including units) without computing transforms.
std::vector<BigInt> invariant_factors(const SparseIntMatrix& a);

std::size_t integer_rank(const SparseIntMatrix& a);

/// Exact re-verification: U A V = D, U U^-1 = I, V V^-1 = I, divisibility.
bool check_snf(const SparseIntMatrix& a, const SNFResult& r);

/// When enabled, every smith_normal_form call runs check_snf and throws on
/// failure. Off by default, on in the test binaries.
void set_snf_self_check(bool on);
bool snf_self_check();

/// Integer solution of A x = b, if one exists.
std::optional<IntVector> solve_integer(const SparseIntMatrix& a, const IntVector& b);

/// Whether b lies in the column span of A over the integers.
bool in_integer_image(const SparseIntMatrix& a, const IntVector& b);

}  // namespace pdpair
