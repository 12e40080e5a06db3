// Gaussian (discrete Morse) reduction of a cube complex: repeatedly cancel
// unit entries of the differential, producing a much smaller homotopy
// equivalent complex together with the chain maps
//
//   rho : C -> C'   and   iota : C' -> C,   rho . iota = id,
//
// so classes transport by rho and representatives lift by iota. Eliminating
// the unit u = d[r][c] replaces d by its Schur complement and drops the pair
// (c, r); rho picks up x - gamma u^{-1} x_r on the target degree and iota
// x - u^{-1} delta(x) c on the source degree. All maps are graded of degree 0.
#pragma once

#include "khx/cube.hpp"

namespace khx {

struct ReducedComplexData {
    const CubeComplex* cx = nullptr;
    int i_min = 0, i_max = 0;
    std::vector<std::vector<int>> qdeg;  // reduced generator degrees, per degree slot
    std::vector<SparseMat> d;            // reduced differentials d[k]: k -> k+1
    std::vector<SparseMat> rho;          // original coords -> reduced coords
    std::vector<SparseMat> iota;         // reduced coords -> original coords

    int dim(int i) const { return (int)qdeg[i - i_min].size(); }
    const SparseMat& diff(int i) const;
    SparseVec project(int i, const SparseVec& v) const { return rho[i - i_min].apply(v); }
    SparseVec lift(int i, const SparseVec& v) const { return iota[i - i_min].apply(v); }
};

ReducedComplexData morse_reduce(const CubeComplex& cx);

// Exact verification of the reduction contract (test support; quadratic).
void verify_reduction(const ReducedComplexData& r);

}  // namespace khx
