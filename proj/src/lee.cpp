#include "khx/lee.hpp"

#include "khx/chainmap.hpp"

#include <sstream>

namespace khx {

namespace {

LinkDiagram ensure_basepoint(const LinkDiagram& d) {
    if (d.basepoint) return d;
    if (d.empty()) throw ScopeError("Lee theory concerns nonempty diagrams");
    int arc = d.arc_labels.empty() ? d.loops.front() : d.arc_labels.front();
    if (!d.loops.empty()) arc = std::min(arc, *std::min_element(d.loops.begin(), d.loops.end()));
    return with_basepoint(d, arc);
}

// h-valuation: minimal quantum degree over the monomials of every coordinate
int min_valuation(const std::vector<RingElement>& coords) {
    int best = -1;
    for (const auto& c : coords) {
        for (const auto& [m, s] : c.terms()) {
            int v = c.mono_qdeg(m) / 2;
            if (best < 0 || v < best) best = v;
        }
    }
    if (best < 0) throw CheckError("Lee class vanishes modulo torsion");
    return best;
}

std::vector<RingElement> divide_coords(const std::vector<RingElement>& coords,
                                       const RingElement& divisor) {
    std::vector<RingElement> out;
    for (const auto& c : coords) out.push_back(c.div_exact(divisor));
    return out;
}

std::string coords_str(const std::vector<RingElement>& coords) {
    std::string s = "(";
    for (size_t k = 0; k < coords.size(); ++k) s += (k ? ", " : "") + coords[k].str();
    return s + ")";
}

RingElement hpow(const Theory* th, const RingElement& h, int d) {
    RingElement e = RingElement::one(th->R);
    for (int k = 0; k < d; ++k) e = e * h;
    return e;
}

}  // namespace

LeeLabeling lee_labeling(const LinkDiagram& d, bool reversed) {
    LeeLabeling out;
    out.seifert = seifert_data(d);
    int r = out.seifert.r;
    out.label.resize(r);
    for (int ci = 0; ci < r; ++ci) {
        int indicator = out.seifert.ccw[ci] ? 0 : 1;
        if (reversed) indicator ^= 1;
        out.label[ci] = (out.seifert.depth[ci] + indicator) % 2 == 0 ? CL_R1 : CL_R2;
    }
    out.pointed_circle = out.seifert.res.pointed_circle;
    if (out.pointed_circle >= 0)
        out.pointed_is_root1 = out.label[out.pointed_circle] == CL_R1;
    return out;
}

ChainVector lee_cycle(const CubeComplex& cx, bool reversed) {
    const LinkDiagram& d = cx.dia;
    if (d.empty()) throw ScopeError("Lee cycle of an empty diagram");
    if (!cx.th->has_roots && cx.th->tag != TheoryTag::U2)
        throw ScopeError("no Lee label candidates over theory " + cx.th->name());
    LeeLabeling lab = lee_labeling(d, reversed);
    std::vector<uint8_t> vor = oriented_vertex(d);
    uint32_t vmask = 0;
    for (size_t c = 0; c < vor.size(); ++c)
        if (vor[c]) vmask |= 1u << c;
    int i = 0;  // the oriented vertex sits in homological degree 0
    const Resolution& res = cx.res[vmask];

    // expand the product of (X - root_j) factors into the generator basis
    std::map<Labels, RingElement> acc;
    acc.emplace(Labels{}, RingElement::one(cx.th->R));
    for (size_t ci = 0; ci < res.circles.size(); ++ci) {
        uint8_t want = lab.label[ci];
        bool keep_root_label =
            cx.reduced != ReducedMode::None && (int)ci == res.pointed_circle;
        if (keep_root_label) {
            uint8_t mode = cx.reduced == ReducedMode::Root1 ? CL_R1 : CL_R2;
            if (mode != want)
                throw CheckError("Lee cycle lies in the other reduced subcomplex of " + d.to_pd());
        }
        std::map<Labels, RingElement> next;
        AlgebraElement e = cx.label_elem(want);
        for (const auto& [pl, pc] : acc) {
            if (keep_root_label) {
                Labels nl = pl;
                nl.push_back(want);
                next.emplace(nl, pc);
                continue;
            }
            Labels nx = pl;
            nx.push_back(CL_X);
            next.emplace(nx, pc * e.c1());
            if (!e.c0().is_zero()) {
                Labels n1 = pl;
                n1.push_back(CL_ONE);
                next.emplace(n1, pc * e.c0());
            }
        }
        acc = std::move(next);
    }
    ChainVector z = zero_chain(cx, i);
    for (const auto& [l, c] : acc)
        if (!c.is_zero()) z.coords.emplace(cx.gen_at(i, vmask, l), c);

    if (!apply_d(z).is_zero())
        throw CheckError("Lee labeling fails the cycle condition on " + d.to_pd() +
                         " over " + cx.th->name());
    // gr_q(alpha) = -w + r
    auto q = z.homogeneous_qdeg();
    int expect = -d.writhe() + (int)res.circles.size() - (cx.reduced != ReducedMode::None ? 1 : 0);
    if (!q || *q != expect)
        throw CheckError("Lee cycle quantum grading mismatch on " + d.to_pd());
    // beta = sigma(alpha) on the unreduced complex
    if (cx.reduced == ReducedMode::None) {
        ChainVector other = zero_chain(cx, i);
        {
            LeeLabeling lab2 = lee_labeling(d, !reversed);
            std::map<Labels, RingElement> acc2;
            acc2.emplace(Labels{}, RingElement::one(cx.th->R));
            for (size_t ci = 0; ci < res.circles.size(); ++ci) {
                AlgebraElement e = cx.label_elem(lab2.label[ci]);
                std::map<Labels, RingElement> next;
                for (const auto& [pl, pc] : acc2) {
                    Labels nx = pl;
                    nx.push_back(CL_X);
                    next.emplace(nx, pc * e.c1());
                    if (!e.c0().is_zero()) {
                        Labels n1 = pl;
                        n1.push_back(CL_ONE);
                        next.emplace(n1, pc * e.c0());
                    }
                }
                acc2 = std::move(next);
            }
            for (const auto& [l, c] : acc2)
                if (!c.is_zero()) other.coords.emplace(cx.gen_at(i, vmask, l), c);
        }
        if (!(sigma_hat_op(cx)(z) == other))
            throw CheckError("beta != sigma(alpha) on " + d.to_pd());
    }
    return z;
}

LeeContext LeeContext::make(const LinkDiagram& d, const BaseRing& field) {
    if (!field.is_field()) throw ScopeError("Lee theory here runs over a field");
    if (field.kind == BaseKind::Fp && field.p > 97)
        throw ScopeError("prime fields are supported up to p = 97");
    LeeContext ctx;
    ctx.dia = ensure_basepoint(d);
    ctx.th = Theory::get(TheoryTag::U1, field);
    ctx.labeling = lee_labeling(ctx.dia);
    ctx.unred = std::make_unique<CubeComplex>(build_complex(ctx.dia, ctx.th));
    ReducedMode mode = ctx.labeling.pointed_is_root1 ? ReducedMode::Root1 : ReducedMode::Root2;
    ctx.red = std::make_unique<CubeComplex>(build_complex(ctx.dia, ctx.th, mode));
    ctx.unred_h = std::make_unique<HomologyPresentation>(homology(*ctx.unred));
    ctx.red_h = std::make_unique<HomologyPresentation>(homology(*ctx.red));
    return ctx;
}

int h_divisibility(const LeeContext& ctx) {
    if (ctx.dia.n_components != 1)
        throw ScopeError("h-divisibility is defined for knots; links go through the nu-basis");
    ChainVector a = ctx.alpha_reduced();
    ClassCoordinates cc = class_coordinates(*ctx.red_h, a);
    if (cc.free_coords.size() != 1)
        throw CheckError("reduced homology free rank is not 1 for a knot diagram");
    return min_valuation(cc.free_coords);
}

int h_divisibility(const LinkDiagram& d, const BaseRing& field) {
    LeeContext ctx = LeeContext::make(d, field);
    return h_divisibility(ctx);
}

nlohmann::json SInvariantReport::to_json() const {
    return {{"schema", "khx.s/1"},
            {"name", name},
            {"field", field},
            {"writhe", writhe},
            {"seifert_circles", seifert_circles},
            {"d_h", d_h},
            {"s_formula", s_formula},
            {"s_gradings", s_gradings},
            {"s", s},
            {"routes_agree", routes_agree},
            {"q_alpha", q_alpha},
            {"generators", {{"zeta", {{"q", q_zeta}, {"coords", zeta_coords}}},
                            {"zeta_tilde", {{"q", q_zeta_tilde}, {"coords", zeta_tilde_coords}}}}},
            {"generators_free", generators_free}};
}

SInvariantReport s_invariant(const LinkDiagram& d, const BaseRing& field) {
    if (d.n_components != 1) throw ScopeError("the s-invariant is defined for knots");
    LeeContext ctx = LeeContext::make(d, field);
    SInvariantReport rep;
    rep.field = field.name();
    rep.writhe = ctx.dia.writhe();
    rep.seifert_circles = ctx.labeling.seifert.r;
    rep.d_h = h_divisibility(ctx);
    rep.s_formula = 2 * rep.d_h + rep.writhe - rep.seifert_circles + 1;

    // route (ii): free gradings of the unreduced homology
    GradedModule m = ctx.unred_h->module();
    std::vector<Summand> fr = m.free_part();
    if (fr.size() != 2 || fr[0].i != 0 || fr[1].i != 0 || fr[1].q - fr[0].q != 2)
        throw CheckError("unreduced homology free part is not two generators at i = 0, q, q+2");
    rep.s_gradings = -(fr[0].q + fr[1].q) / 2;
    rep.routes_agree = rep.s_formula == rep.s_gradings;
    if (!rep.routes_agree)
        throw CheckError("s-invariant routes disagree: formula " + std::to_string(rep.s_formula) +
                         " vs gradings " + std::to_string(rep.s_gradings) + " on " + ctx.dia.to_pd());
    rep.s = rep.s_formula;

    // canonical generators
    ChainVector a = ctx.alpha(false), b = ctx.alpha(true);
    rep.q_alpha = *a.homogeneous_qdeg();
    if (rep.q_alpha != -rep.writhe + rep.seifert_circles)
        throw CheckError("gr_q(alpha) != -w + r");
    ClassCoordinates ca = class_coordinates(*ctx.unred_h, a);
    ClassCoordinates cb = class_coordinates(*ctx.unred_h, b);
    const Theory* th = ctx.th;
    RingElement h = th->rel_h;
    int dh = rep.d_h;
    std::vector<RingElement> zt = divide_coords(ca.free_coords, hpow(th, h, dh));
    // zeta = ([alpha] + (-1)^{d+1} [beta]) / h^{d+1}
    std::vector<RingElement> znum;
    RingElement sgn = RingElement::of_int(th->R, dh % 2 == 0 ? -1 : 1);
    for (size_t k = 0; k < ca.free_coords.size(); ++k)
        znum.push_back(ca.free_coords[k] + cb.free_coords[k] * sgn);
    std::vector<RingElement> zz = divide_coords(znum, hpow(th, h, dh + 1));
    rep.zeta_tilde_coords = coords_str(zt);
    rep.zeta_coords = coords_str(zz);
    rep.q_zeta_tilde = rep.q_alpha - 2 * dh;
    rep.q_zeta = rep.q_alpha - 2 * (dh + 1);
    if (rep.q_zeta_tilde != -rep.s + 1 || rep.q_zeta != -rep.s - 1)
        throw CheckError("generator gradings disagree with s");

    // zeta and zeta-tilde freely generate Kh/Tor over F[h]
    RingElement det = zz[0] * zt[1] - zz[1] * zt[0];
    rep.generators_free = !det.is_zero() && det.is_homogeneous() &&
                          det.homogeneous_qdeg() == 0;
    if (!rep.generators_free)
        throw CheckError("zeta, zeta-tilde do not freely generate Kh/Tor: det = " + det.str());
    return rep;
}

LinkBasis link_basis_via_nu(const LinkDiagram& d, const BaseRing& field) {
    LinkBasis out;
    out.ctx = std::make_unique<LeeContext>(LeeContext::make(d, field));
    LeeContext& ctx = *out.ctx;
    int ell = ctx.dia.n_components;

    // reduced homology must have rank at most 1 per homological degree
    GradedModule rm = ctx.red_h->module();
    std::map<int, int> rank_by_i;
    for (const auto& s : rm.free_part()) rank_by_i[s.i]++;
    for (const auto& [i, r] : rank_by_i)
        if (r > 1)
            throw ScopeError("reduced homology has rank " + std::to_string(r) +
                             " in homological degree " + std::to_string(i) +
                             "; the nu-basis hypothesis fails");
    size_t expected = 1u << (ell - 1);
    if (rm.free_part().size() != expected)
        throw CheckError("reduced free rank is not 2^(l-1)");

    MatrixChainMap incl = include_reduced(*ctx.red, *ctx.unred);
    ChainOp nu = nu_hat_op(*ctx.unred);
    std::vector<std::vector<RingElement>> rows;
    for (const auto& [i, deg] : ctx.red_h->degrees) {
        for (size_t a = 0; a < deg.orders.size(); ++a) {
            if (!deg.kept[a] || !deg.orders[a].is_zero()) continue;
            ChainVector zr = ctx.red_h->representative(i, (int)a);
            ChainVector z = incl.apply(zr);
            ChainVector nz = nu(z);
            out.z.push_back(z);
            out.nu_z.push_back(nz);
            out.hom_degree.push_back(i);
            rows.push_back(class_coordinates(*ctx.unred_h, z).free_coords);
            rows.push_back(class_coordinates(*ctx.unred_h, nz).free_coords);
        }
    }
    // the 2^l classes freely generate Kh/Tor: block-diagonal per homological
    // degree, so check each square block has unit determinant
    GradedModule um = ctx.unred_h->module();
    std::vector<Summand> uf = um.free_part();
    if (rows.size() != uf.size()) throw CheckError("unreduced free rank is not 2^l");
    std::map<int, std::vector<size_t>> rows_by_i;
    for (size_t r = 0; r < rows.size(); ++r) rows_by_i[out.hom_degree[r / 2]].push_back(r);
    out.verified = true;
    for (const auto& [i, rws] : rows_by_i) {
        // coordinate vectors are per-degree: each row spans the free rank at i
        size_t n = rws.size();
        std::vector<std::vector<RingElement>> B(n, std::vector<RingElement>(n));
        for (size_t r = 0; r < n; ++r) {
            if (rows[rws[r]].size() != n)
                throw CheckError("free rank mismatch in degree " + std::to_string(i));
            for (size_t c = 0; c < n; ++c) B[r][c] = rows[rws[r]][c];
        }
        std::function<RingElement(std::vector<size_t>, std::vector<size_t>)> det =
            [&](std::vector<size_t> ri, std::vector<size_t> ci) -> RingElement {
            if (ri.empty()) return RingElement::one(out.z.front().cx->th->R);
            RingElement acc = RingElement::zero(out.z.front().cx->th->R);
            std::vector<size_t> subr(ri.begin() + 1, ri.end());
            for (size_t k = 0; k < ci.size(); ++k) {
                std::vector<size_t> subc;
                for (size_t l = 0; l < ci.size(); ++l)
                    if (l != k) subc.push_back(ci[l]);
                RingElement cof = B[ri[0]][ci[k]] * det(subr, subc);
                acc = k % 2 == 0 ? acc + cof : acc - cof;
            }
            return acc;
        };
        std::vector<size_t> all(n);
        for (size_t k = 0; k < n; ++k) all[k] = k;
        RingElement D = det(all, all);
        if (D.is_zero() || !(D.homogeneous_qdeg().value_or(-1) == 0)) out.verified = false;
    }
    if (!out.verified) throw CheckError("nu-basis does not freely generate Kh/Tor");
    return out;
}

Su2Transfer su2_transfer(const LinkDiagram& d0, const BaseRing& field) {
    if (!field.is_field() || field.characteristic() == 2)
        throw ScopeError("the su2 transfer requires a field of characteristic != 2");
    LinkDiagram d = ensure_basepoint(d0);
    Su2Transfer out;
    const Theory* sq = Theory::get(TheoryTag::SU2Sqrt, field);
    const Theory* st = Theory::get(TheoryTag::SU2, field);
    out.sqrt_cx = std::make_unique<CubeComplex>(build_complex(d, sq));
    out.t_cx = std::make_unique<CubeComplex>(build_complex(d, st));

    ChainVector a = lee_cycle(*out.sqrt_cx, false);
    ChainVector b = lee_cycle(*out.sqrt_cx, true);
    ChainVector gp = a + b;
    RingElement twost = sq->nu_divisor();  // 2 st
    ChainVector gm = zero_chain(*out.sqrt_cx, 0);
    for (const auto& [g, c] : (a - b).coords) gm.coords.emplace(g, c.div_exact(twost));

    // gamma coefficients are sqrt(t)-free and transfer to the su2 complex
    auto to_t = [&](const ChainVector& z, bool& ok) {
        ChainVector w = zero_chain(*out.t_cx, z.i);
        for (const auto& [g, c] : z.coords) {
            RingElement conv = RingElement::zero(st->R);
            for (const auto& [m, s] : c.terms()) {
                if (m[0] % 2) {
                    ok = false;
                    continue;
                }
                Mono mt(1, (uint16_t)(m[0] / 2));
                conv += RingElement::monomial(st->R, mt, s);
            }
            const CubeGenerator& gen = out.sqrt_cx->degree(z.i)[g];
            if (!conv.is_zero())
                w.coords.emplace(out.t_cx->gen_at(z.i, gen.vertex, gen.labels), conv);
        }
        return w;
    };
    out.sqrt_free = true;
    out.gamma_plus = to_t(gp, out.sqrt_free);
    out.gamma_minus = to_t(gm, out.sqrt_free);
    out.cycles = apply_d(out.gamma_plus).is_zero() && apply_d(out.gamma_minus).is_zero();
    auto qp = out.gamma_plus.homogeneous_qdeg();
    auto qm = out.gamma_minus.homogeneous_qdeg();
    out.q_plus = qp.value_or(0);
    out.q_minus = qm.value_or(0);
    out.mod4_split = qp && qm && (out.q_plus % 4 + 4) % 4 != (out.q_minus % 4 + 4) % 4 &&
                     out.q_plus - out.q_minus == 2;

    // zeta_t and zeta'_t via the parity of d_h
    out.d_h = h_divisibility(d, field);
    out.t_h = std::make_unique<HomologyPresentation>(homology(*out.t_cx));
    ClassCoordinates cp = class_coordinates(*out.t_h, out.gamma_plus);
    ClassCoordinates cm = class_coordinates(*out.t_h, out.gamma_minus);
    RingElement fourt =
        RingElement::variable(st->R, "t") * RingElement::of_int(st->R, 4);
    auto divpow = [&](const std::vector<RingElement>& c, int k) {
        std::vector<RingElement> r = c;
        for (int j = 0; j < k; ++j) r = divide_coords(r, fourt);
        return r;
    };
    try {
        if (out.d_h % 2 == 0) {
            out.zeta_t = divpow(cm.free_coords, out.d_h / 2);
            out.zeta_t_prime = divpow(cp.free_coords, out.d_h / 2);
        } else {
            out.zeta_t = divpow(cp.free_coords, (out.d_h + 1) / 2);
            out.zeta_t_prime = divpow(cm.free_coords, (out.d_h - 1) / 2);
        }
        RingElement det =
            out.zeta_t[0] * out.zeta_t_prime[1] - out.zeta_t[1] * out.zeta_t_prime[0];
        out.zeta_ok = !det.is_zero() && det.homogeneous_qdeg().value_or(-1) == 0;
    } catch (const CheckError&) {
        out.zeta_ok = false;
    }
    return out;
}

}  // namespace khx
