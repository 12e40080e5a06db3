#include "khx/verify.hpp"

#include "khx/dual.hpp"
#include "khx/lee.hpp"
#include "khx/splitting.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace khx {

namespace {

using Rng = std::mt19937_64;

RingElement rand_poly(const GroundRing* R, Rng& rng, int max_terms = 2, int max_exp = 2) {
    std::uniform_int_distribution<int> coef(-4, 4), expo(0, max_exp), nt(1, max_terms);
    RingElement e = RingElement::zero(R);
    int n = nt(rng);
    for (int i = 0; i < n; ++i) {
        Mono m(R->nvars());
        for (auto& x : m) x = (uint16_t)expo(rng);
        e += RingElement::monomial(R, m, Scalar::of_int(R->base, coef(rng)));
    }
    return e;
}

AlgebraElement rand_elem(const Theory* th, Rng& rng) {
    return {th, rand_poly(th->R, rng), rand_poly(th->R, rng)};
}

TensorVector rand_tensor(const Theory* th, Rng& rng, int len) {
    TensorVector t(th, len);
    std::uniform_int_distribution<int> nt(1, 2);
    int n = nt(rng);
    for (int i = 0; i < n; ++i) {
        Labels l(len);
        for (auto& x : l) x = rng() % 2 ? LBL_X : LBL_ONE;
        t.add_term(l, rand_poly(th->R, rng));
    }
    return t;
}

RingElement nu0(const Theory* th, const RingElement& c) {
    return (c - th->coeff_action(th->nu_involution(), c)).div_exact(th->nu_divisor());
}

struct SuiteRunner {
    VerifyReport& rep;
    const VerifyOptions& opt;

    // fn returns a counterexample description, or empty for pass
    void randomized(const std::string& name, const std::function<std::string(Rng&)>& fn) {
        Rng rng(opt.seed ^ std::hash<std::string>{}(name));
        VerifyItem item;
        item.name = name;
        item.pass = true;
        for (long i = 0; i < opt.samples; ++i) {
            std::string fail = fn(rng);
            ++item.samples;
            if (!fail.empty()) {
                item.pass = false;
                item.detail = fail;
                break;
            }
        }
        rep.items.push_back(std::move(item));
    }

    void once(const std::string& name, const std::function<std::string()>& fn) {
        VerifyItem item;
        item.name = name;
        item.samples = 1;
        std::string fail = fn();
        item.pass = fail.empty();
        item.detail = fail;
        rep.items.push_back(std::move(item));
    }
};

std::string expect_tv(const TensorVector& got, const TensorVector& want, const std::string& what) {
    if (got == want) return "";
    return what + ": got " + got.str() + ", want " + want.str();
}

std::string expect_re(const RingElement& got, const RingElement& want, const std::string& what) {
    if (got == want) return "";
    return what + ": got " + got.str() + ", want " + want.str();
}

// the four involutive-extension identities for (inv on coefficients, inv on A)
void add_frobenius_op_identities(SuiteRunner& run, const std::string& prefix, const Theory* th,
                                 InvKind kind, int delta_sign, int eps_sign, bool twist_scalars) {
    auto inv1 = [=](const TensorVector& x) { return involution(x, kind); };
    auto inv0 = [=](const RingElement& c) {
        return twist_scalars ? th->coeff_action(kind, c) : c;
    };
    run.randomized(prefix + ".m", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 2);
        TensorVector lhs = merge_factors(inv1(x), 0, 1, 0);
        TensorVector rhs = inv1(merge_factors(x, 0, 1, 0));
        return expect_tv(lhs, rhs, prefix + ".m");
    });
    run.randomized(prefix + ".iota", [=](Rng& rng) {
        RingElement r = rand_poly(th->R, rng);
        TensorVector lhs = TensorVector::single(th, unit(th, inv0(r)));
        TensorVector rhs = inv1(TensorVector::single(th, unit(th, r)));
        return expect_tv(lhs, rhs, prefix + ".iota");
    });
    run.randomized(prefix + ".delta", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1);
        TensorVector lhs = split_factor(inv1(x), 0, 0, 1);
        TensorVector rhs = inv1(split_factor(x, 0, 0, 1));
        if (delta_sign < 0) rhs = -rhs;
        return expect_tv(lhs, rhs, prefix + ".delta");
    });
    run.randomized(prefix + ".eps", [=](Rng& rng) {
        AlgebraElement a = rand_elem(th, rng);
        RingElement lhs = counit(involution(a, kind));
        RingElement rhs = inv0(counit(a));
        if (eps_sign < 0) rhs = -rhs;
        return expect_re(lhs, rhs, prefix + ".eps");
    });
}

void add_nu_identities(SuiteRunner& run, const std::string& prefix, const Theory* th) {
    InvKind kind = th->nu_involution();
    run.randomized(prefix + ".leibniz", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1 + rng() % 2);
        TensorVector y = rand_tensor(th, rng, 1 + rng() % 2);
        TensorVector lhs = nu_hat(TensorVector::concat(x, y));
        TensorVector rhs = TensorVector::concat(nu_hat(x), y) +
                           TensorVector::concat(involution(x, kind), nu_hat(y));
        return expect_tv(lhs, rhs, prefix + ".leibniz");
    });
    run.randomized(prefix + ".sigma-nu", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1 + rng() % 3);
        TensorVector n = nu_hat(x);
        std::string e = expect_tv(involution(n, kind), n, prefix + ".sigma(nu)=nu");
        if (!e.empty()) return e;
        return expect_tv(-nu_hat(involution(x, kind)), n, prefix + ".-nu(sigma)=nu");
    });
    run.randomized(prefix + ".squared", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1 + rng() % 3);
        TensorVector n2 = nu_hat(nu_hat(x));
        return n2.is_zero() ? "" : prefix + ".squared: nu^2(x) = " + n2.str();
    });
    // nu commutes with the Frobenius algebra operations
    run.randomized(prefix + ".and-A.m", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 2);
        return expect_tv(merge_factors(nu_hat(x), 0, 1, 0), nu_hat(merge_factors(x, 0, 1, 0)),
                         prefix + ".and-A.m");
    });
    run.randomized(prefix + ".and-A.iota", [=](Rng& rng) {
        RingElement r = rand_poly(th->R, rng);
        return expect_tv(TensorVector::single(th, unit(th, nu0(th, r))),
                         nu_hat(TensorVector::single(th, unit(th, r))), prefix + ".and-A.iota");
    });
    run.randomized(prefix + ".and-A.delta", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1);
        return expect_tv(split_factor(nu_hat(x), 0, 0, 1), nu_hat(split_factor(x, 0, 0, 1)),
                         prefix + ".and-A.delta");
    });
    run.randomized(prefix + ".and-A.eps", [=](Rng& rng) {
        AlgebraElement a = rand_elem(th, rng);
        return expect_re(counit(nu_hat(a)), nu0(th, counit(a)), prefix + ".and-A.eps");
    });
    // acyclicity identities on tensors
    AlgebraElement A1 = th->has_roots
                            ? AlgebraElement(th, -th->root1, RingElement::one(th->R))
                            : AlgebraElement::X(th);
    AlgebraElement A2 = th->has_roots
                            ? AlgebraElement(th, -th->root2, RingElement::one(th->R))
                            : AlgebraElement::Y(th);
    run.randomized(prefix + ".acyclic-id", [=](Rng& rng) {
        TensorVector x = rand_tensor(th, rng, 1 + rng() % 3);
        TensorVector lhs = nu_hat(multiply_factor(x, 0, A1)) - multiply_factor(nu_hat(x), 0, A2);
        std::string e = expect_tv(lhs, x, prefix + ".acyclic-id(1)");
        if (!e.empty()) return e;
        TensorVector lhs2 = multiply_factor(nu_hat(x), 0, A1) - nu_hat(multiply_factor(x, 0, A2));
        return expect_tv(lhs2, x, prefix + ".acyclic-id(2)");
    });
}

}  // namespace

VerifyReport verify_frobenius_suite(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "frobenius";
    SuiteRunner run{rep, opt};

    BaseRing Z = BaseRing::integers();
    BaseRing F2 = BaseRing::prime_field(2);
    const Theory* U2 = Theory::get(TheoryTag::U2, Z);
    const Theory* U1 = Theory::get(TheoryTag::U1, Z);
    const Theory* UA = Theory::get(TheoryTag::U1xU1, Z);
    const Theory* SQ = Theory::get(TheoryTag::SU2Sqrt, Z);
    const Theory* U1F2 = Theory::get(TheoryTag::U1, F2);

    // Prop sigma-ops: sigma is R-linear, Delta anti-commutes, eps negates
    add_frobenius_op_identities(run, "sigma-ops", U2, InvKind::Sigma, -1, -1, false);
    // Prop hsigma-ops
    add_frobenius_op_identities(run, "hsigma-ops", U2, InvKind::SigmaHat, +1, +1, true);
    add_frobenius_op_identities(run, "sigma-alpha-ops", UA, InvKind::SigmaAlpha, +1, +1, true);
    add_frobenius_op_identities(run, "sigma-sqrt-ops", SQ, InvKind::SigmaSqrtT, +1, +1, true);

    run.once("hsigma.eigen-structure", [&]() -> std::string {
        RingElement h = RingElement::variable(U2->R, "h");
        AlgebraElement one = AlgebraElement::one(U2), U = AlgebraElement::U(U2);
        if (!(involution(one, InvKind::SigmaHat) == one)) return "sigma-hat(1) != 1";
        if (!(involution(U, InvKind::SigmaHat) == U)) return "sigma-hat(U) != U";
        if (!(involution(one * h, InvKind::SigmaHat) == -(one * h))) return "sigma-hat(h) != -h";
        if (!(involution(U * h, InvKind::SigmaHat) == -(U * h))) return "sigma-hat(hU) != -hU";
        return "";
    });

    run.randomized("involutions-square", [=](Rng& rng) {
        for (auto [th, kind] : std::initializer_list<std::pair<const Theory*, InvKind>>{
                 {U2, InvKind::Sigma},
                 {U2, InvKind::SigmaHat},
                 {UA, InvKind::SigmaAlpha},
                 {SQ, InvKind::SigmaSqrtT}}) {
            TensorVector x = rand_tensor(th, rng, rng() % 3);
            if (!(involution(involution(x, kind), kind) == x))
                return "involution not involutive on " + x.str();
        }
        return std::string();
    });

    // Prop hnu-formula + hnu-and-A + acyclicity identities, per theory
    add_nu_identities(run, "hnu", U2);
    add_nu_identities(run, "u1xu1.nu-alpha", UA);
    add_nu_identities(run, "su2sqrt.nu", SQ);

    // Prop nu-and-sigma in characteristic 2: id + h nu-bar = sigma
    run.randomized("nu-and-sigma.char2", [=](Rng& rng) {
        TensorVector x = rand_tensor(U1F2, rng, 1 + rng() % 3);
        RingElement h = U1F2->rel_h;
        TensorVector lhs = x + nu_bar(x) * h;
        return expect_tv(lhs, involution(x, InvKind::Sigma), "id + h nu-bar = sigma");
    });

    // nu-hat specializes to nu-bar at t = 0 and to nu at h = t = 0 over F2
    run.randomized("nu-specialization", [=](Rng& rng) {
        const Theory* U2F2 = Theory::get(TheoryTag::U2, F2);
        const Arrow& to_u1 = get_arrow("u2_to_u1", F2);
        const Arrow& to_plain = get_arrow("u1_to_plain", F2);
        TensorVector x = rand_tensor(U2F2, rng, 1 + rng() % 2);
        TensorVector xu1 = base_change(x, to_u1);
        std::string e =
            expect_tv(base_change(nu_hat(x), to_u1), nu_bar(xu1), "nu-hat|_{t=0} = nu-bar");
        if (!e.empty()) return e;
        return expect_tv(base_change(nu_bar(xu1), to_plain), nu_k(base_change(xu1, to_plain), 1),
                         "nu-bar|_{h=0} = nu");
    });

    // Prop hat-sigma-and-dual-ops and D as a Frobenius algebra isomorphism
    run.randomized("hat-sigma-and-dual-ops", [=](Rng& rng) {
        const Theory* th = U2;
        DualElement f = dualize(rand_elem(th, rng)), g = dualize(rand_elem(th, rng));
        RingElement r = rand_poly(th->R, rng);
        if (!(dual_mul(dual_involution(f), dual_involution(g)) == dual_involution(dual_mul(f, g))))
            return std::string("Delta* (sD x sD) != sD Delta*");
        if (!(dual_unit(th, th->sigma0(r)) == dual_involution(dual_unit(th, r))))
            return std::string("eps* sigma0 != sD eps*");
        if (!(dual_counit(dual_involution(f)) == th->sigma0(dual_counit(f))))
            return std::string("iota* sD != sigma0 iota*");
        // m* sD = (sD x sD) m*, with the semilinear tensor action expanded
        auto c = dual_comul(f);
        auto cs = dual_comul(dual_involution(f));
        DualElement b1(th, RingElement::one(th->R), RingElement::zero(th->R));
        DualElement bX(th, RingElement::zero(th->R), RingElement::one(th->R));
        auto piece = [&](const RingElement& coeff, const DualElement& u, const DualElement& v,
                         std::array<RingElement, 4>& acc) {
            acc[0] += coeff * u.d0() * v.d0();
            acc[1] += coeff * u.d0() * v.d1();
            acc[2] += coeff * u.d1() * v.d0();
            acc[3] += coeff * u.d1() * v.d1();
        };
        std::array<RingElement, 4> want{RingElement::zero(th->R), RingElement::zero(th->R),
                                        RingElement::zero(th->R), RingElement::zero(th->R)};
        DualElement s1 = dual_involution(b1), sX = dual_involution(bX);
        piece(th->sigma0(c[0]), s1, s1, want);
        piece(th->sigma0(c[1]), s1, sX, want);
        piece(th->sigma0(c[2]), sX, s1, want);
        piece(th->sigma0(c[3]), sX, sX, want);
        for (int i = 0; i < 4; ++i)
            if (!(cs[i] == want[i])) return std::string("m* sD != (sD x sD) m*");
        return std::string();
    });

    run.randomized("dual.frobenius-iso", [=](Rng& rng) {
        const Theory* th = U2;
        AlgebraElement a = rand_elem(th, rng), b = rand_elem(th, rng);
        RingElement r = rand_poly(th->R, rng);
        if (!(dual_mul(dualize(a), dualize(b)) == dualize(multiply(a, b))))
            return std::string("Delta*(Da, Db) != D(ab)");
        if (!(dual_unit(th, r) == dualize(unit(th, r)))) return std::string("eps* != D iota");
        if (!(dual_counit(dualize(a)) == counit(a))) return std::string("iota* D != eps");
        // m*(Da) = (D x D)(Delta a)
        auto c = dual_comul(dualize(a));
        TensorVector d = comultiply(a);
        std::array<RingElement, 4> want{RingElement::zero(th->R), RingElement::zero(th->R),
                                        RingElement::zero(th->R), RingElement::zero(th->R)};
        for (const auto& [l, coeff] : d.terms())
            want[(l[0] == LBL_X ? 2 : 0) + (l[1] == LBL_X ? 1 : 0)] += coeff;
        for (int i = 0; i < 4; ++i)
            if (!(c[i] == want[i])) return std::string("m* D != (D x D) Delta");
        return std::string();
    });

    run.randomized("dual.intertwines-sigma", [=](Rng& rng) {
        AlgebraElement a = rand_elem(U2, rng);
        DualElement lhs = dual_involution(dualize(a));
        DualElement rhs = dualize(involution(a, InvKind::SigmaHat));
        return lhs == rhs ? "" : "D sigma-hat != sigma-hat_D D at " + a.str();
    });

    // base-change arrows compose along commuting paths
    run.randomized("base-change.paths", [=](Rng& rng) {
        TensorVector x = rand_tensor(U2, rng, 1 + rng() % 2);
        auto via = [&](const TensorVector& v, const std::string& a) {
            return base_change(v, get_arrow(a, Z));
        };
        if (!(via(via(x, "u2_to_u1xu1"), "u1xu1_to_u1") == via(x, "u2_to_u1")))
            return std::string("u2 -> u1xu1 -> u1 != u2 -> u1");
        if (!(via(via(x, "u2_to_u1xu1"), "u1xu1_to_su2sqrt") ==
              via(via(x, "u2_to_su2"), "su2_to_su2sqrt")))
            return std::string("u2 -> u1xu1 -> su2sqrt != u2 -> su2 -> su2sqrt");
        TensorVector y = rand_tensor(U1, rng, 1 + rng() % 2);
        if (!(via(via(y, "u1_to_u1xu1"), "u1xu1_to_u1") == y))
            return std::string("u1xu1 projection does not retract the section");
        if (!(via(via(y, "u1_to_su2sqrt"), "su2sqrt_to_plain") == via(y, "u1_to_plain")))
            return std::string("u1 -> su2sqrt -> plain != u1 -> plain");
        return std::string();
    });

    // the section s and the su2sqrt arrow are involutive homomorphisms
    run.randomized("base-change.involutive", [=](Rng& rng) {
        TensorVector y = rand_tensor(U1, rng, 1 + rng() % 2);
        const Arrow& s = get_arrow("u1_to_u1xu1", Z);
        if (!(base_change(involution(y, InvKind::SigmaHat), s) ==
              involution(base_change(y, s), InvKind::SigmaAlpha)))
            return std::string("s sigma-hat != sigma-alpha s");
        const Arrow& w = get_arrow("u1_to_su2sqrt", Z);
        if (!(base_change(involution(y, InvKind::SigmaHat), w) ==
              involution(base_change(y, w), InvKind::SigmaSqrtT)))
            return std::string("w sigma-hat != sigma-sqrt w");
        return std::string();
    });

    return rep;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path);
    std::vector<CorpusEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string a, b;
        ss >> a >> b;
        if (a.empty()) continue;
        if (b.empty()) {
            out.push_back({"", a});  // bare PD
        } else {
            out.push_back({a, b});
        }
    }
    return out;
}

BaseRing parse_base_ring(const std::string& s) {
    if (s == "z" || s == "Z") return BaseRing::integers();
    if (s == "q" || s == "Q") return BaseRing::rationals();
    if ((s.size() > 1 && (s[0] == 'f' || s[0] == 'F'))) {
        for (size_t k = 1; k < s.size(); ++k)
            if (!isdigit((unsigned char)s[k])) throw ParseError("bad field: " + s);
        return BaseRing::prime_field((uint32_t)std::stoul(s.substr(1)));
    }
    throw ParseError("unknown coefficient ring: " + s + " (expected z, q or f<p>)");
}

LinkDiagram r1_variant(const LinkDiagram& d, bool positive) {
    if (d.n_arcs() == 0) throw Error("r1 variant needs a crossing arc");
    int arc = d.arc_labels.front();
    int ai = d.arc_index.at(arc);
    int head = d.arc_ends[ai][1];
    int n1 = d.arc_labels.back() + 1, n2 = n1 + 1;
    for (int l : d.loops) {
        n1 = std::max(n1, l + 1);
        n2 = n1 + 1;
    }
    LinkDiagram out = d;
    out.crossings[slot_crossing(head)].arcs[slot_pos(head)] = n2;
    Crossing kink;
    kink.arcs = positive ? std::array<int, 4>{arc, n2, n1, n1}
                         : std::array<int, 4>{arc, n1, n1, n2};
    out.crossings.push_back(kink);
    out.finalize();
    if (!planar_euler_ok(out)) throw CheckError("r1 variant is not planar");
    if (out.writhe() != d.writhe() + (positive ? 1 : -1)) throw CheckError("r1 writhe drift");
    return out;
}

LinkDiagram r2_variant(const LinkDiagram& d) {
    if (d.n_arcs() == 0) throw Error("r2 variant needs crossings");
    MapFaces f = map_faces(d);
    // first face carrying darts of two distinct arcs
    for (const auto& orbit : f.face_darts) {
        for (size_t a = 0; a < orbit.size(); ++a) {
            for (size_t b = a + 1; b < orbit.size(); ++b) {
                int dx = orbit[a], dy = orbit[b];
                if (dx / 2 == dy / 2) continue;
                int x = d.arc_labels[dx / 2], y = d.arc_labels[dy / 2];
                int hx = d.dart_head_slot(dx), hy = d.dart_head_slot(dy);
                int m1 = std::max(d.arc_labels.back(), 0) + 1;
                for (int l : d.loops) m1 = std::max(m1, l + 1);
                int m2 = m1 + 1, m3 = m2 + 1, m4 = m3 + 1;
                LinkDiagram out = d;
                out.crossings[slot_crossing(hx)].arcs[slot_pos(hx)] = m2;
                out.crossings[slot_crossing(hy)].arcs[slot_pos(hy)] = m4;
                Crossing c1, c2;
                c1.arcs = {x, m3, m1, m4};
                c2.arcs = {m1, m3, m2, y};
                out.crossings.push_back(c1);
                out.crossings.push_back(c2);
                out.finalize();
                if (!planar_euler_ok(out)) throw CheckError("r2 variant is not planar");
                if (out.writhe() != d.writhe()) throw CheckError("r2 writhe drift");
                return out;
            }
        }
    }
    throw Error("no admissible face for an r2 variant");
}

namespace {

LinkDiagram parse_spec_diagram(const VerifyOptions& opt) {
    if (opt.pd.empty()) throw ParseError("this suite needs --pd");
    return parse_pd(opt.pd);
}

void push(VerifyReport& rep, const std::string& name, const std::function<void()>& body) {
    VerifyItem item;
    item.name = name;
    item.samples = 1;
    try {
        body();
        item.pass = true;
    } catch (const std::exception& e) {
        item.pass = false;
        item.detail = e.what();
    }
    rep.items.push_back(std::move(item));
}

}  // namespace

VerifyReport verify_matrix_identities(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "matrix-identities";
    LinkDiagram d0 = parse_spec_diagram(opt);
    LinkDiagram d = d0.basepoint ? d0 : with_basepoint(d0, d0.arc_labels.empty()
                                                               ? d0.loops.front()
                                                               : d0.arc_labels.front());
    BaseRing base = parse_base_ring(opt.field.empty() ? "f2" : opt.field);
    const Theory* th =
        Theory::get(opt.theory.empty() ? TheoryTag::U1 : theory_tag_parse(opt.theory), base);
    std::unique_ptr<CubeComplex> cx;
    push(rep, "build.d2-and-homogeneity", [&] { cx = std::make_unique<CubeComplex>(build_complex(d, th)); });
    if (!cx) return rep;
    push(rep, "sigma.chain-map", [&] { chain_endo(*cx, EndoKind::SigmaHat); });
    if (th->has_nu()) {
        push(rep, "nu.chain-map", [&] { chain_endo(*cx, EndoKind::NuHat); });
        push(rep, "nu.squared-zero", [&] {
            ChainOp nu = nu_hat_op(*cx);
            for (int i = cx->i_min; i <= cx->i_max; ++i)
                for (int g = 0; g < cx->dim(i); ++g)
                    if (!nu(nu(gen_chain(*cx, i, g))).is_zero()) throw CheckError("nu^2 != 0");
        });
        push(rep, "acyclic.nuX-Ynu=id", [&] {
            ChainOp nu = nu_hat_op(*cx);
            AlgebraElement A1(th, -th->root1, RingElement::one(th->R));
            AlgebraElement A2(th, -th->root2, RingElement::one(th->R));
            MatrixChainMap X = pointed_mul(*cx, A1), Y = pointed_mul(*cx, A2);
            std::vector<RingElement> probes = semilinear_probes(th);
            probes.insert(probes.begin(), RingElement::one(th->R));
            for (int i = cx->i_min; i <= cx->i_max; ++i)
                for (int g = 0; g < cx->dim(i); ++g)
                    for (const auto& t : probes) {
                        ChainVector z = gen_chain(*cx, i, g) * t;
                        if (!(nu(X.apply(z)) - Y.apply(nu(z)) == z))
                            throw CheckError("nu Xbar - Ybar nu != id");
                        if (!(X.apply(nu(z)) - nu(Y.apply(z)) == z))
                            throw CheckError("Xbar nu - nu Ybar != id");
                    }
        });
    }
    push(rep, "u.squared-discriminant", [&] {
        MatrixChainMap u = pointed_u(*cx, true);
        RingElement disc = th->rel_h * th->rel_h + th->rel_t * RingElement::of_int(th->R, 4);
        for (int i = cx->i_min; i <= cx->i_max; ++i)
            for (int g = 0; g < cx->dim(i); ++g) {
                ChainVector z = gen_chain(*cx, i, g);
                if (!(u.apply(u.apply(z)) == z * disc)) throw CheckError("u^2 != h^2 + 4t");
            }
    });
    if (th->tag == TheoryTag::U1 && th->R->characteristic() == 2)
        push(rep, "wigderson.f=dK+Kd", [&] { chain_endo(*cx, EndoKind::WigdersonK); });
    return rep;
}

VerifyReport verify_splitting(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "splitting";
    LinkDiagram d0 = parse_spec_diagram(opt);
    LinkDiagram d = d0.basepoint ? d0 : with_basepoint(d0, d0.arc_labels.empty()
                                                               ? d0.loops.front()
                                                               : d0.arc_labels.front());
    std::vector<std::pair<std::string, const Theory*>> runs;
    if (opt.theory.empty() || opt.theory == "u1") {
        BaseRing base = parse_base_ring(opt.field.empty() ? "f2" : opt.field);
        runs.push_back({"split.u1." + base.name(), Theory::get(TheoryTag::U1, base)});
    }
    if (opt.theory.empty() || opt.theory == "u1xu1")
        runs.push_back({"split.u1xu1.Z", Theory::get(TheoryTag::U1xU1, BaseRing::integers())});
    for (const auto& [name, th] : runs)
        push(rep, name, [&] { split_reduced(build_complex(d, th)); });
    return rep;
}

VerifyReport verify_nu_acyclic(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "nu-acyclic";
    LinkDiagram d = parse_spec_diagram(opt);
    BaseRing base = parse_base_ring(opt.field.empty() ? "q" : opt.field);
    push(rep, "nu-acyclic." + base.name(), [&] {
        AcyclicityReport r = nu_homology_acyclicity(build_complex(d, Theory::get(TheoryTag::U1, base)));
        if (!r.nu_squares_to_zero) throw CheckError("nu^2 != 0 on homology");
        if (!r.acyclic) throw CheckError(r.detail);
    });
    return rep;
}

VerifyReport verify_su2(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "su2";
    LinkDiagram d = parse_spec_diagram(opt);
    if (d.n_components != 1)
        throw ScopeError("the su2 transfer suite runs on knot diagrams");
    BaseRing base = parse_base_ring(opt.field.empty() ? "q" : opt.field);
    push(rep, "su2." + base.name(), [&] {
        Su2Transfer t = su2_transfer(d, base);
        if (!t.sqrt_free) throw CheckError("gamma coefficients involve sqrt(t)");
        if (!t.cycles) throw CheckError("gamma chains are not cycles");
        if (!t.mod4_split) throw CheckError("gamma chains do not split mod 4");
        if (!t.zeta_ok) throw CheckError("zeta_t, zeta'_t are not free generators");
    });
    return rep;
}

VerifyReport verify_duality(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "duality";
    LinkDiagram d = parse_spec_diagram(opt);
    push(rep, "mirror-dual.chain-iso", [&] {
        mirror_dual_iso(d, Theory::get(TheoryTag::U2, BaseRing::integers()));
    });
    push(rep, "mirror-dual.composite", [&] {
        MirrorDual fwd = mirror_dual_iso(d, Theory::get(TheoryTag::U2, BaseRing::integers()));
        MirrorDual bwd = mirror_dual_iso(mirror(d), Theory::get(TheoryTag::U2, BaseRing::integers()));
        for (int j = fwd.cx_star->i_min; j <= fwd.cx_star->i_max; ++j) {
            SparseMat T = bwd.at(-j).transpose();
            SparseMat neg(T.ring(), T.nrows(), T.ncols());
            T.for_each([&](int r, int c, const RingElement& v) { neg.set(r, c, -v); });
            if (!(T == fwd.at(j)) && !(neg == fwd.at(j)))
                throw CheckError("composite differs from the identity beyond sign");
        }
    });
    BaseRing base = parse_base_ring(opt.field.empty() ? "q" : opt.field);
    push(rep, "mirror.homology-bigradings-negated." + base.name(), [&] {
        const Theory* th = Theory::get(TheoryTag::U1, base);
        GradedModule a = homology(build_complex(d, th)).module();
        GradedModule b = homology(build_complex(mirror(d), th)).module();
        auto f = a.free_part(), g = b.free_part();
        if (f.size() != g.size()) throw CheckError("free ranks differ");
        std::vector<std::pair<int, int>> x, y;
        for (const auto& s : f) x.push_back({s.i, s.q});
        for (const auto& s : g) y.push_back({-s.i, -s.q});
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) throw CheckError("free bigradings are not negated");
    });
    return rep;
}

VerifyReport verify_invariance(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.suite = "invariance";
    if (opt.corpus_path.empty()) throw ParseError("invariance suite needs a corpus file");
    std::vector<BaseRing> fields = {BaseRing::prime_field(2), BaseRing::rationals()};
    if (!opt.field.empty()) fields = {parse_base_ring(opt.field)};
    for (const auto& entry : load_corpus(opt.corpus_path)) {
        push(rep, "invariance." + entry.name, [&] {
            LinkDiagram d = parse_pd(entry.pd);
            std::vector<LinkDiagram> variants{d};
            if (d.n_arcs() > 0) {
                variants.push_back(r1_variant(d, d.writhe() <= 0));
                if (d.n_crossings() <= 6) variants.push_back(r2_variant(r1_variant(d, false)));
            }
            for (const BaseRing& F : fields) {
                const Theory* th = Theory::get(TheoryTag::U1, F);
                GradedModule base_mod = homology(build_complex(variants[0], th)).module();
                std::optional<SInvariantReport> base_s;
                if (d.n_components == 1) base_s = s_invariant(variants[0], F);
                for (size_t v = 1; v < variants.size(); ++v) {
                    GradedModule m = homology(build_complex(variants[v], th)).module();
                    if (!(m == base_mod))
                        throw CheckError(entry.name + " variant " + std::to_string(v) +
                                         " homology differs over " + F.name());
                    if (base_s) {
                        SInvariantReport s = s_invariant(variants[v], F);
                        if (s.s != base_s->s || s.q_zeta != base_s->q_zeta ||
                            s.q_zeta_tilde != base_s->q_zeta_tilde ||
                            2 * s.d_h + s.writhe - s.seifert_circles !=
                                2 * base_s->d_h + base_s->writhe - base_s->seifert_circles)
                            throw CheckError(entry.name + " s-invariant data drifts across variants");
                    }
                }
            }
        });
    }
    return rep;
}

}  // namespace khx
