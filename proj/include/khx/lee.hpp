// Lee cycles, h-divisibility, the Rasmussen s-invariant over a field, the
// canonical generators zeta and zeta-tilde, the nu-basis for links, and the
// SU(2) transfer gamma+/gamma-, zeta_t, zeta'_t.
#pragma once

#include "khx/homology.hpp"
#include "khx/splitting.hpp"

#include <memory>

namespace khx {

// X/Y coloring of the Seifert circles: a circle gets the first root label
// when (nesting depth + winding indicator) is even, the second otherwise;
// the indicator is 0 for counterclockwise circles. Reversing the orientation
// swaps every label. The induced chain is checked to be a cycle at runtime,
// never assumed.
struct LeeLabeling {
    SeifertData seifert;
    std::vector<uint8_t> label;  // per circle: CL_R1 or CL_R2
    int pointed_circle = -1;     // when the diagram has a basepoint
    bool pointed_is_root1 = true;
};

LeeLabeling lee_labeling(const LinkDiagram& d, bool reversed = false);

// The Lee cycle in the given complex (unreduced, or the reduced complex that
// contains it). Verifies d(alpha) = 0 and beta = sigma(alpha); throws
// CheckError with the diagram attached when the labeling fails the cycle
// condition.
ChainVector lee_cycle(const CubeComplex& cx, bool reversed = false);

// Everything the s-invariant pipeline needs for one diagram over F[h].
class LeeContext {
public:
    LinkDiagram dia;  // with basepoint
    const Theory* th = nullptr;
    std::unique_ptr<CubeComplex> unred, red;
    std::unique_ptr<HomologyPresentation> unred_h, red_h;
    LeeLabeling labeling;

    static LeeContext make(const LinkDiagram& d, const BaseRing& field);
    ChainVector alpha(bool reversed = false) const { return lee_cycle(*unred, reversed); }
    ChainVector alpha_reduced() const { return lee_cycle(*red); }
};

// Maximal d with [alpha] = h^d (free generator) modulo torsion in reduced
// homology; knots only.
int h_divisibility(const LinkDiagram& d, const BaseRing& field);
int h_divisibility(const LeeContext& ctx);

struct SInvariantReport {
    std::string name;
    std::string field;
    int writhe = 0;
    int seifert_circles = 0;
    int d_h = 0;
    int s_formula = 0;   // 2 d_h + w - r + 1
    int s_gradings = 0;  // negated average of the two free quantum gradings
    int s = 0;
    int q_alpha = 0;
    int q_zeta = 0, q_zeta_tilde = 0;
    bool routes_agree = false;
    bool generators_free = false;
    std::string zeta_coords, zeta_tilde_coords;
    nlohmann::json to_json() const;
};

// Both routes computed and cross-checked; disagreement is a hard failure.
SInvariantReport s_invariant(const LinkDiagram& d, const BaseRing& field);

struct LinkBasis {
    std::unique_ptr<LeeContext> ctx;
    std::vector<ChainVector> z;     // cycles in the unreduced complex
    std::vector<ChainVector> nu_z;  // their nu images
    std::vector<int> hom_degree;
    bool verified = false;  // the 2^l classes freely generate Kh/Tor
};

// Requires reduced homology of rank at most 1 per homological degree.
LinkBasis link_basis_via_nu(const LinkDiagram& d, const BaseRing& field);

struct Su2Transfer {
    std::unique_ptr<CubeComplex> sqrt_cx;  // su2sqrt over F
    std::unique_ptr<CubeComplex> t_cx;     // su2 over F
    std::unique_ptr<HomologyPresentation> t_h;
    ChainVector gamma_plus, gamma_minus;   // in the su2 complex over F[t]
    int q_plus = 0, q_minus = 0;           // quantum gradings, opposite mod 4
    int d_h = 0;
    bool sqrt_free = true;   // gamma coefficients lie in F[t]
    bool cycles = true;
    bool mod4_split = true;  // {q_plus, q_minus} = {1, 3} mod 4
    bool zeta_ok = true;     // zeta_t, zeta'_t exist and freely generate Kh_t / Tor
    std::vector<RingElement> zeta_t, zeta_t_prime;  // free coordinates
};

// Characteristic != 2 only (checked); knots.
Su2Transfer su2_transfer(const LinkDiagram& d, const BaseRing& field);

}  // namespace khx
