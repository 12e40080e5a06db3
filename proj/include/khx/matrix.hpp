// Sparse matrices over a GroundRing, with the row/column operations needed
// for Smith normal form and change-of-basis tracking.
#pragma once

#include "khx/ring.hpp"

#include <functional>
#include <map>
#include <set>

namespace khx {

using SparseVec = std::map<int, RingElement>;

class SparseMat {
public:
    SparseMat() : ring_(nullptr), nrows_(0), ncols_(0) {}
    SparseMat(const GroundRing* R, int nrows, int ncols);
    static SparseMat identity(const GroundRing* R, int n);

    const GroundRing* ring() const { return ring_; }
    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }
    size_t nnz() const;

    const RingElement* get(int i, int j) const;  // nullptr when zero
    RingElement at(int i, int j) const;
    void set(int i, int j, const RingElement& v);
    void add_at(int i, int j, const RingElement& v);
    const SparseVec& row(int i) const { return rows_[i]; }
    SparseVec col(int j) const;
    const std::set<int>& col_support(int j) const { return cols_[j]; }

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    // row_i += c * row_j
    void addmul_row(int i, int j, const RingElement& c);
    // col_i += c * col_j
    void addmul_col(int i, int j, const RingElement& c);
    void scale_row(int i, const Scalar& u);
    void scale_col(int j, const Scalar& u);

    SparseMat mul(const SparseMat& o) const;
    SparseVec apply(const SparseVec& v) const;  // matrix * column vector
    SparseMat transpose() const;
    bool is_zero() const { return nnz() == 0; }
    bool is_identity() const;
    bool operator==(const SparseMat& o) const;

    void for_each(const std::function<void(int, int, const RingElement&)>& f) const;
    std::string str() const;

private:
    const GroundRing* ring_;
    int nrows_, ncols_;
    std::vector<SparseVec> rows_;
    std::vector<std::set<int>> cols_;
};

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(const SparseVec& a, const RingElement& c);
bool sv_is_zero(const SparseVec& a);

}  // namespace khx
