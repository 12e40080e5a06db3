// Chain maps and chain operators on cube complexes.
//
// R-linear maps (pointed multiplications, u, inclusions, projections to
// reduced complexes, Wigderson K) carry per-degree sparse matrices. The
// involution and nu operators act semilinearly over the ground ring and are
// provided as chain transforms; both kinds verify their chain-map equation
// on construction by probing every generator (and a scalar twist of it, which
// determines a semilinear map completely).
#pragma once

#include "khx/cube.hpp"

#include <functional>

namespace khx {

enum class EndoKind : uint8_t { SigmaHat, NuHat, XBar, YBar, X1Bar, X2Bar, U, WigdersonK };

struct MatrixChainMap {
    const CubeComplex* src = nullptr;
    const CubeComplex* dst = nullptr;
    int dh = 0;  // homological offset
    int dq = 0;  // quantum offset
    std::vector<SparseMat> mats;  // by source degree index

    const SparseMat& at(int i) const { return mats[i - src->i_min]; }
    ChainVector apply(const ChainVector& z) const;
};

// f d = sign * d f, checked entrywise on matrices.
void verify_matrix_chain_map(const MatrixChainMap& f, int sign);

struct ChainOp {
    const CubeComplex* src = nullptr;
    const CubeComplex* dst = nullptr;
    int dh = 0;
    std::function<ChainVector(const ChainVector&)> fn;

    ChainVector operator()(const ChainVector& z) const { return fn(z); }
};

// d f = sign * f d on every generator and on scalar-twisted generators.
void verify_chain_op(const ChainOp& f, int sign);

// The theory's chain involution (sigma-hat; sigma_alpha over u1xu1 and
// sigma_sqrt over su2sqrt) and the nu operator, on unreduced complexes.
ChainOp sigma_hat_op(const CubeComplex& cx);
ChainOp nu_hat_op(const CubeComplex& cx);

// Multiplication by an algebra element on the pointed circle.
MatrixChainMap pointed_mul(const CubeComplex& cx, const AlgebraElement& a);

// u = (+/-) pointed multiplication by U = 2X - h; the sign is + when the
// pointed Seifert circle carries the first root label in the Lee coloring.
MatrixChainMap pointed_u(const CubeComplex& cx, bool pointed_is_root1);

// C_{root} -> C and C -> C_{root} (multiply by X - root, land in the
// subcomplex); the building blocks of the splitting theorem.
MatrixChainMap include_reduced(const CubeComplex& red, const CubeComplex& unred);
MatrixChainMap project_by_root(const CubeComplex& unred, const CubeComplex& red);

// chain_endo per the operation table; u needs the Lee label of the pointed
// circle, Wigderson K characteristic 2 and the u1 theory.
ChainOp chain_endo(const CubeComplex& cx, EndoKind kind, bool pointed_is_root1 = true);

// Wigderson homotopy K on the module splitting C = C_1 (+) C_X over
// characteristic 2: (1 at basepoint) tensor y -> (X at basepoint) tensor nu(y).
// Returns K as an endomorphism matrix of the unreduced complex, supported on
// C_1 columns and C_X rows. The relation f = d_X K + K d_1 is checked by
// verify_wigderson.
MatrixChainMap wigderson_K(const CubeComplex& cx);
void verify_wigderson(const CubeComplex& cx, const MatrixChainMap& K);

// Scalar probes that determine a semilinear endomorphism on generators.
std::vector<RingElement> semilinear_probes(const Theory* th);

}  // namespace khx
