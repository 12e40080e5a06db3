// The Khovanov cube complex of a link diagram over a theory.
//
// Generators at homological degree i = |v| - n_minus are pairs (vertex v,
// circle labeling); the differential applies merge (m) or split (Delta) maps
// along cube edges with the sign (-1)^(number of 1-coordinates below the
// changed one). Quantum grading of a generator:
//
//   q = deg(labels) - r_v - |v| - n_plus + 2 n_minus   (- 1 when reduced)
//
// with deg(1) = 0 and deg(X) = deg(X - root) = 2. This calibration places the
// unreduced unknot generators at q = -1, +1 and the reduced one at q = 0, and
// reproduces the published equivariant trefoil tables.
//
// Reduced complexes fix the label of the circle through the basepoint to
// X - root1 or X - root2; both are subcomplexes whenever the defining
// quadratic factors (u1, u1xu1, su2sqrt, plain).
#pragma once

#include "khx/algebra.hpp"
#include "khx/diagram.hpp"
#include "khx/matrix.hpp"

namespace khx {

// Complex-level circle labels. CL_R1/CL_R2 appear only at the pointed circle
// of a reduced complex.
constexpr uint8_t CL_ONE = 0, CL_X = 1, CL_R1 = 2, CL_R2 = 3;

enum class ReducedMode : uint8_t { None, Root1, Root2 };

struct CubeGenerator {
    uint32_t vertex = 0;
    Labels labels;
    int q = 0;
};

class CubeComplex {
public:
    const Theory* th = nullptr;
    LinkDiagram dia;
    ReducedMode reduced = ReducedMode::None;
    int n_plus = 0, n_minus = 0;
    int i_min = 0, i_max = 0;

    std::vector<Resolution> res;  // by vertex mask
    std::vector<std::vector<CubeGenerator>> gens;  // by i - i_min
    std::vector<std::map<std::pair<uint32_t, Labels>, int>> index;
    std::vector<std::pair<int, int>> vertex_span;  // by vertex: (first gen index, count)
    std::vector<SparseMat> diff;  // diff[k] : C^{i_min+k} -> C^{i_min+k+1}

    int n_degrees() const { return (int)gens.size(); }
    int dim(int i) const { return in_range(i) ? (int)gens[i - i_min].size() : 0; }
    bool in_range(int i) const { return i >= i_min && i <= i_max; }
    const std::vector<CubeGenerator>& degree(int i) const { return gens[i - i_min]; }
    int gen_at(int i, uint32_t vertex, const Labels& l) const;
    const SparseMat& d(int i) const;  // zero-sized matrix outside range
    std::vector<int> qdegs(int i) const;
    size_t total_rank() const;

    AlgebraElement label_elem(uint8_t l) const;
    // express a0 + a1 X as a coordinate in the pointed-circle basis {X - root}
    RingElement root_coord(uint8_t root_label, const RingElement& a0, const RingElement& a1) const;
};

CubeComplex build_complex(const LinkDiagram& d, const Theory* th,
                          ReducedMode reduced = ReducedMode::None);

// An element of the complex in a fixed homological degree.
struct ChainVector {
    const CubeComplex* cx = nullptr;
    int i = 0;
    SparseVec coords;

    bool is_zero() const { return coords.empty(); }
    bool operator==(const ChainVector& o) const;
    ChainVector operator+(const ChainVector& o) const;
    ChainVector operator-(const ChainVector& o) const;
    ChainVector operator*(const RingElement& c) const;
    std::optional<int> homogeneous_qdeg() const;
    std::string str() const;
};

ChainVector apply_d(const ChainVector& z);
ChainVector zero_chain(const CubeComplex& cx, int i);
ChainVector gen_chain(const CubeComplex& cx, int i, int idx);

}  // namespace khx
