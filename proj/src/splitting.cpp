#include "khx/splitting.hpp"

namespace khx {

namespace {

ChainVector nu_on(const CubeComplex& cx, const ChainVector& z) { return nu_hat_op(cx)(z); }

}  // namespace

std::pair<ChainVector, ChainVector> SplitReduced::phi(const ChainVector& x) const {
    ChainVector b = proj2.apply(x);
    ChainVector in_c1 = x + nu_on(*unred, incl2.apply(b));
    return {extract(in_c1, *c1), b};
}

ChainVector SplitReduced::psi(const ChainVector& a, const ChainVector& b) const {
    return incl1.apply(a) - nu_on(*unred, incl2.apply(b));
}

ChainVector SplitReduced::extract(const ChainVector& x, const CubeComplex& red) const {
    uint8_t plabel = red.reduced == ReducedMode::Root1 ? CL_R1 : CL_R2;
    const RingElement& root = red.reduced == ReducedMode::Root1 ? red.th->root1 : red.th->root2;
    // group coordinates by (vertex, labels % pointed slot)
    std::map<std::pair<uint32_t, Labels>, std::pair<RingElement, RingElement>> grouped;
    for (const auto& [gi, c] : x.coords) {
        const CubeGenerator& g = unred->degree(x.i)[gi];
        int p = unred->res[g.vertex].pointed_circle;
        if (p < 0) throw Error("extract needs a pointed complex");
        Labels key = g.labels;
        bool is_x = key[p] == CL_X;
        key[p] = CL_ONE;
        auto& slot = grouped
                         .emplace(std::make_pair(g.vertex, key),
                                  std::make_pair(RingElement::zero(red.th->R),
                                                 RingElement::zero(red.th->R)))
                         .first->second;
        (is_x ? slot.second : slot.first) += c;
    }
    ChainVector out = zero_chain(red, x.i);
    for (const auto& [key, a01] : grouped) {
        if (a01.first.is_zero() && a01.second.is_zero()) continue;
        if (!(a01.first == -(a01.second * root)))
            throw CheckError("chain does not lie in the reduced subcomplex");
        Labels l = key.second;
        l[unred->res[key.first].pointed_circle] = plabel;
        int idx = red.gen_at(x.i, key.first, l);
        if (!a01.second.is_zero()) out.coords.emplace(idx, a01.second);
    }
    return out;
}

ChainVector SplitReduced::cross12(const ChainVector& a) const {
    ChainOp sig = sigma_hat_op(*unred);
    return extract(sig(incl1.apply(a)), *c2);
}

ChainVector SplitReduced::cross21(const ChainVector& b) const {
    ChainOp sig = sigma_hat_op(*unred);
    return extract(sig(incl2.apply(b)), *c1);
}

SplitReduced split_reduced(const CubeComplex& cx) {
    if (cx.reduced != ReducedMode::None) throw Error("split_reduced expects the unreduced complex");
    if (cx.th->tag != TheoryTag::U1 && cx.th->tag != TheoryTag::U1xU1)
        throw ScopeError("splitting is established for the u1 and u1xu1 theories");
    if (!cx.dia.basepoint) throw ScopeError("splitting requires a basepoint");

    SplitReduced s;
    s.unred = &cx;
    s.c1 = std::make_unique<CubeComplex>(build_complex(cx.dia, cx.th, ReducedMode::Root1));
    s.c2 = std::make_unique<CubeComplex>(build_complex(cx.dia, cx.th, ReducedMode::Root2));
    s.incl1 = include_reduced(*s.c1, cx);
    s.incl2 = include_reduced(*s.c2, cx);
    s.proj1 = project_by_root(cx, *s.c1);
    s.proj2 = project_by_root(cx, *s.c2);

    std::vector<RingElement> probes = semilinear_probes(cx.th);
    probes.insert(probes.begin(), RingElement::one(cx.th->R));

    // proj2 . incl1 = 0 and the section property proj2 (-nu) incl2 = id
    for (int i = cx.i_min; i <= cx.i_max; ++i) {
        if (!s.proj2.at(i).mul(s.incl1.at(i)).is_zero())
            throw CheckError("C_{R1} does not map to zero in C_{R2}");
        for (int g = 0; g < s.c2->dim(i); ++g) {
            for (const auto& t : probes) {
                ChainVector b = gen_chain(*s.c2, i, g) * t;
                ChainVector back =
                    s.proj2.apply(nu_on(cx, s.incl2.apply(b)) * RingElement::of_int(cx.th->R, -1));
                if (!(back == b)) throw CheckError("-nu is not a section of the projection");
            }
        }
    }

    // phi and psi are mutually inverse chain maps
    for (int i = cx.i_min; i <= cx.i_max; ++i) {
        for (int g = 0; g < cx.dim(i); ++g) {
            for (const auto& t : probes) {
                ChainVector x = gen_chain(cx, i, g) * t;
                auto [a, b] = s.phi(x);
                if (!(s.psi(a, b) == x)) throw CheckError("psi(phi(x)) != x at " + x.str());
                if (i < cx.i_max) {
                    auto [da, db] = s.phi(apply_d(x));
                    if (!(da == apply_d(a) && db == apply_d(b)))
                        throw CheckError("phi is not a chain map at " + x.str());
                }
            }
        }
        for (int g = 0; g < s.c1->dim(i); ++g) {
            for (const auto& t : probes) {
                ChainVector a = gen_chain(*s.c1, i, g) * t;
                auto [ra, rb] = s.phi(s.psi(a, zero_chain(*s.c2, i)));
                if (!(ra == a && rb.is_zero())) throw CheckError("phi(psi(a,0)) != (a,0)");
            }
        }
        for (int g = 0; g < s.c2->dim(i); ++g) {
            for (const auto& t : probes) {
                ChainVector b = gen_chain(*s.c2, i, g) * t;
                auto [ra, rb] = s.phi(s.psi(zero_chain(*s.c1, i), b));
                if (!(ra.is_zero() && rb == b)) throw CheckError("phi(psi(0,b)) != (0,b)");
                if (i < cx.i_max && !(s.psi(zero_chain(*s.c1, i + 1), apply_d(b)) ==
                                      apply_d(s.psi(zero_chain(*s.c1, i), b))))
                    throw CheckError("psi is not a chain map on the C_{R2} leg");
            }
        }
    }

    // sigma exchanges the two reduced subcomplexes involutively
    for (int i = cx.i_min; i <= cx.i_max; ++i) {
        for (int g = 0; g < s.c1->dim(i); ++g) {
            ChainVector a = gen_chain(*s.c1, i, g);
            if (!(s.cross21(s.cross12(a)) == a))
                throw CheckError("sigma does not swap the reduced subcomplexes involutively");
        }
    }
    return s;
}

}  // namespace khx
