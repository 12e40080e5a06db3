// Smith normal form over Euclidean rings with full change-of-basis tracking:
// S = P * M * Q with P, Q invertible, S diagonal, d1 | d2 | ... Pivots are
// normalized monic (polynomial rings) or positive (Z); units are folded into
// the change-of-basis matrices. Pivot selection: minimal Euclidean norm, ties
// by lowest (row, col), so results are deterministic.
//
// The graded variant carries quantum degrees per row and column. A matrix is
// homogeneous when every entry at (i, j) has degree col_q[j] - row_q[i]; the
// reduction preserves this and the result carries the permuted degrees.
#pragma once

#include "khx/matrix.hpp"

namespace khx {

struct SnfResult {
    SparseMat S, P, Pinv, Q, Qinv;
    std::vector<RingElement> invariant_factors;  // the nonzero diagonal, canonical
    int rank = 0;
    std::vector<int> row_q, col_q;  // permuted degrees when graded, else empty

    bool has_grading() const { return !row_q.empty() || !col_q.empty(); }
};

SnfResult smith_normal_form(const SparseMat& M);
SnfResult smith_normal_form_graded(const SparseMat& M, std::vector<int> row_q, std::vector<int> col_q);

// Check every entry of M is homogeneous of degree col_q[j] - row_q[i].
bool is_matrix_homogeneous(const SparseMat& M, const std::vector<int>& row_q, const std::vector<int>& col_q);

}  // namespace khx
