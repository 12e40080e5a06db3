// Frobenius extensions parameterized by theory:
//
//   u2      R = k[h,t]      A = R[X]/(X^2 - hX - t)
//   u1      R = k[h]        A = R[X]/(X^2 - hX)          roots 0, h
//   u1xu1   R = k[a1,a2]    A = R[X]/((X-a1)(X-a2))      roots a1, a2
//   su2     R = k[t]        A = R[X]/(X^2 - t)
//   su2sqrt R = k[st]       A = R[X]/(X^2 - st^2)        roots -st, st
//   plain   R = k           A = R[X]/(X^2)               roots 0, 0
//
// over a base k in {Z, Q, F_p}. Degrees: h, a1, a2, st, X of degree 2 and t
// of degree 4. Theories are interned; pointer equality is theory equality.
#pragma once

#include "khx/ring.hpp"

namespace khx {

enum class TheoryTag : uint8_t { U2, U1, U1xU1, SU2, SU2Sqrt, Plain };

std::string theory_tag_name(TheoryTag t);
TheoryTag theory_tag_parse(const std::string& s);

enum class InvKind : uint8_t { Sigma, SigmaHat, SigmaAlpha, SigmaSqrtT };

struct Theory {
    TheoryTag tag;
    const GroundRing* R;
    RingElement rel_h, rel_t;  // X^2 = rel_h * X + rel_t in A

    // Roots of X^2 - rel_h X - rel_t when it factors over R (all but u2).
    bool has_roots = false;
    RingElement root1, root2;

    // Interned instance for (tag, base); pointers stable for process lifetime.
    static const Theory* get(TheoryTag tag, const BaseRing& base);

    std::string name() const { return theory_tag_name(tag); }
    BaseRing base() const { return R->base; }

    bool involution_valid(InvKind k) const;
    // The involution paired with this theory's nu operation.
    InvKind nu_involution() const;
    bool has_nu() const;
    RingElement nu_divisor() const;

    // sigma-hat action on scalars: each monomial times (-1)^(qdeg/2)
    RingElement sigma0(const RingElement& c) const { return c.degree_sign_twisted(); }
    // coefficient action of an involution kind
    RingElement coeff_action(InvKind k, const RingElement& c) const;
};

// A registered base-change arrow between theories over the same base ring.
struct Arrow {
    std::string name;
    const Theory* from;
    const Theory* to;
    std::vector<RingElement> var_images;  // image of each from-ring variable
    RingElement x_shift;                  // X maps to X + x_shift

    RingElement map_scalar(const RingElement& c) const;
};

const Arrow& get_arrow(const std::string& name, const BaseRing& base);
std::vector<std::string> arrow_names();

}  // namespace khx
