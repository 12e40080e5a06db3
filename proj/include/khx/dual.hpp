// The canonical chain isomorphism CKh(D*) = CKh(D)^* for the mirror D* over
// the u2 theory, factor-wise D(1) = X*, D(X) = 1* + h X*, with the vertex
// sign mu(u) = prod over set bits c of (-1)^c. The dual complex of C is
// (C^*)^j = (C^{-j})^* with differential the transpose of d.
#pragma once

#include "khx/chainmap.hpp"

#include <memory>

namespace khx {

struct MirrorDual {
    std::unique_ptr<CubeComplex> cx;       // CKh(D)
    std::unique_ptr<CubeComplex> cx_star;  // CKh(D*)
    // M[j - cx_star->i_min] : CKh(D*)^j -> (C^{-j})^*, rows = generators of C^{-j}
    std::vector<SparseMat> M;

    const SparseMat& at(int j) const { return M[j - cx_star->i_min]; }
};

// Builds both complexes, the isomorphism, and verifies: chain-map equation
// against the transpose differential, invertibility, homogeneity with dual
// gradings negated, and the intertwining of the involutions.
MirrorDual mirror_dual_iso(const LinkDiagram& d, const Theory* th);

// sigma-hat_D on dual coordinates (indexed by generators of C^{-j}).
SparseVec dual_sigma(const CubeComplex& cx, int i, const SparseVec& coords);

}  // namespace khx
