// Bigraded homology of cube complexes over Euclidean ground rings, as module
// presentations with explicit cycle representatives and coordinates.
//
// Per homological degree: a graded kernel basis of d_i comes from the SNF of
// d_i, the image of d_{i-1} is expressed in that basis, and the SNF of the
// relation matrix yields free and torsion summands with homogeneous basis
// chains. Coordinates of a cycle class follow the same changes of basis.
#pragma once

#include "khx/cube.hpp"
#include "khx/reduce.hpp"
#include "khx/snf.hpp"

#include "json.hpp"

namespace khx {

struct Summand {
    int i = 0;
    int q = 0;
    RingElement order;  // zero when free
    bool is_free() const { return order.is_zero(); }
};

struct GradedModule {
    const GroundRing* ring = nullptr;
    std::vector<Summand> summands;  // sorted by (i, q, order)

    std::vector<Summand> free_part() const;
    std::vector<Summand> at_degree(int i) const;
    bool operator==(const GradedModule& o) const;
    std::string table() const;  // rows q (descending), columns i
    nlohmann::json to_json() const;
};

std::string summand_name(const Summand& s, const GroundRing* R);

class HomologyPresentation {
public:
    const CubeComplex* cx = nullptr;
    // The presentation is computed on the Morse-reduced residue; classes
    // transport through rho and representatives lift through iota.
    ReducedComplexData reduced;

    struct Degree {
        int i = 0;
        std::vector<SparseVec> basis;      // presentation basis cycles, original coords
        std::vector<SparseVec> basis_red;  // the same in reduced coordinates
        SparseMat coord_rows;  // extracts kernel coordinates from an original cycle
        SparseMat PR;          // kernel coordinates -> presentation coordinates
        std::vector<RingElement> orders;  // zero free, nonzero torsion (units not kept)
        std::vector<int> pos_q;
        std::vector<char> kept;
    };
    std::map<int, Degree> degrees;

    GradedModule module() const;
    // homogeneous cycle representative of a presentation position
    ChainVector representative(int i, int pos) const;
};

// Throws ScopeError for non-Euclidean ground rings (u2, u1xu1 homology needs
// the chain-level operations instead).
HomologyPresentation homology(const CubeComplex& cx);

struct ClassCoordinates {
    int i = 0;
    // parallel to the kept positions of the presentation at degree i
    std::vector<RingElement> coords;       // torsion entries reduced mod order
    std::vector<RingElement> free_coords;  // the free-position subsequence
};

// z must be a cycle (checked).
ClassCoordinates class_coordinates(const HomologyPresentation& H, const ChainVector& z);

struct AcyclicityReport {
    bool acyclic = true;
    bool nu_squares_to_zero = true;
    std::map<int, bool> by_degree;
    std::string detail;
};

// Homology-level acyclicity of (Kh_h(D; F), nu): requires the u1 theory over
// a field and a nonempty diagram. Exactness is checked at every bidegree in
// the finite support window plus two stable columns; beyond the window the
// transition matrices repeat with period 2 in q.
AcyclicityReport nu_homology_acyclicity(const CubeComplex& cx);

}  // namespace khx
