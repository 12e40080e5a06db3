#include "doctest.h"

#include "khx/algebra.hpp"
#include "khx/verify.hpp"

using namespace khx;

namespace {
const Theory* U2 = Theory::get(TheoryTag::U2, BaseRing::integers());
const Theory* U1 = Theory::get(TheoryTag::U1, BaseRing::integers());
const Theory* UA = Theory::get(TheoryTag::U1xU1, BaseRing::integers());
const Theory* U1F2 = Theory::get(TheoryTag::U1, BaseRing::prime_field(2));

RingElement rv(const Theory* th, const char* name) { return RingElement::variable(th->R, name); }
}  // namespace

TEST_CASE("multiplication table") {
    AlgebraElement X = AlgebraElement::X(U2);
    AlgebraElement one = AlgebraElement::one(U2);
    // X * X = hX + t
    AlgebraElement xx = multiply(X, X);
    CHECK(xx.c0() == rv(U2, "t"));
    CHECK(xx.c1() == rv(U2, "h"));
    CHECK(multiply(one, X) == X);
    // X * Y = 0 in u1
    AlgebraElement xy = multiply(AlgebraElement::X(U1), AlgebraElement::Y(U1));
    CHECK(xy.is_zero());
    // U^2 = h^2 + 4t, the discriminant
    AlgebraElement uu = multiply(AlgebraElement::U(U2), AlgebraElement::U(U2));
    CHECK(uu.c1().is_zero());
    CHECK(uu.c0() == rv(U2, "h") * rv(U2, "h") + rv(U2, "t") * RingElement::of_int(U2->R, 4));
}

TEST_CASE("comultiplication and counit") {
    TensorVector d1 = comultiply(AlgebraElement::one(U2));
    TensorVector expect(U2, 2);
    expect.add_term({LBL_ONE, LBL_X}, RingElement::one(U2->R));
    expect.add_term({LBL_X, LBL_ONE}, RingElement::one(U2->R));
    expect.add_term({LBL_ONE, LBL_ONE}, -rv(U2, "h"));
    CHECK(d1 == expect);

    TensorVector dX = comultiply(AlgebraElement::X(U2));
    TensorVector expect2(U2, 2);
    expect2.add_term({LBL_X, LBL_X}, RingElement::one(U2->R));
    expect2.add_term({LBL_ONE, LBL_ONE}, rv(U2, "t"));
    CHECK(dX == expect2);

    // linearity: Delta(h 1) = h Delta(1)
    CHECK(comultiply(AlgebraElement::one(U2) * rv(U2, "h")) == d1 * rv(U2, "h"));

    CHECK(counit(AlgebraElement::one(U2)).is_zero());
    CHECK(counit(AlgebraElement::X(U2)) == RingElement::one(U2->R));
    // eps(hX + t 1) = h
    AlgebraElement a(U2, rv(U2, "t"), rv(U2, "h"));
    CHECK(counit(a) == rv(U2, "h"));
}

TEST_CASE("involution values") {
    // sigma-hat(X) = X - h = Y
    CHECK(involution(AlgebraElement::X(U2), InvKind::SigmaHat) == AlgebraElement::Y(U2));
    // sigma-hat(h 1) = -h 1 on a 2-tensor
    TensorVector t(U2, 2);
    t.add_term({LBL_ONE, LBL_ONE}, rv(U2, "h"));
    CHECK(involution(t, InvKind::SigmaHat) == -t);
    // sigma_alpha(X - a1) = X - a2
    AlgebraElement X1(UA, -rv(UA, "a1"), RingElement::one(UA->R));
    AlgebraElement X2(UA, -rv(UA, "a2"), RingElement::one(UA->R));
    CHECK(involution(X1, InvKind::SigmaAlpha) == X2);
    // sigma-hat(t X) = t Y
    CHECK(involution(AlgebraElement::X(U2) * rv(U2, "t"), InvKind::SigmaHat) ==
          AlgebraElement::Y(U2) * rv(U2, "t"));
    // eigen-structure: fixes 1 and U, negates h and hU
    CHECK(involution(AlgebraElement::one(U2), InvKind::SigmaHat) == AlgebraElement::one(U2));
    CHECK(involution(AlgebraElement::U(U2), InvKind::SigmaHat) == AlgebraElement::U(U2));
    CHECK(involution(AlgebraElement::one(U2) * rv(U2, "h"), InvKind::SigmaHat) ==
          -(AlgebraElement::one(U2) * rv(U2, "h")));
    CHECK(involution(AlgebraElement::U(U2) * rv(U2, "h"), InvKind::SigmaHat) ==
          -(AlgebraElement::U(U2) * rv(U2, "h")));
}

TEST_CASE("nu-hat values") {
    CHECK(nu_hat(AlgebraElement::X(U2)) == AlgebraElement::one(U2));
    CHECK(nu_hat(AlgebraElement::one(U2) * rv(U2, "h")) ==
          AlgebraElement::one(U2) * RingElement::of_int(U2->R, 2));
    CHECK(nu_hat(AlgebraElement::X(U2) * rv(U2, "h")) == AlgebraElement::U(U2));
    CHECK(nu_hat(AlgebraElement::Y(U2) * rv(U2, "h")) == AlgebraElement::U(U2));
    // nu-hat(X tensor X) = 1 X + X 1 - h (1 1)
    TensorVector xx = TensorVector::pure(U2, {LBL_X, LBL_X});
    TensorVector expect(U2, 2);
    expect.add_term({LBL_ONE, LBL_X}, RingElement::one(U2->R));
    expect.add_term({LBL_X, LBL_ONE}, RingElement::one(U2->R));
    expect.add_term({LBL_ONE, LBL_ONE}, -rv(U2, "h"));
    CHECK(nu_hat(xx) == expect);
    // nu_alpha(X - a1) = +1; the displayed -1 contradicts the definition
    AlgebraElement X1(UA, -rv(UA, "a1"), RingElement::one(UA->R));
    CHECK(nu_hat(X1) == AlgebraElement::one(UA));
    CHECK(nu_hat(AlgebraElement(UA, rv(UA, "a1"), RingElement::zero(UA->R))) ==
          -AlgebraElement::one(UA));
}

TEST_CASE("nu_k combinatorics in characteristic 2") {
    TensorVector xx = TensorVector::pure(U1F2, {LBL_X, LBL_X});
    TensorVector n1(U1F2, 2);
    n1.add_term({LBL_ONE, LBL_X}, RingElement::one(U1F2->R));
    n1.add_term({LBL_X, LBL_ONE}, RingElement::one(U1F2->R));
    CHECK(nu_k(xx, 1) == n1);
    CHECK(nu_k(xx, 2) == TensorVector::pure(U1F2, {LBL_ONE, LBL_ONE}));
    CHECK(nu_k(xx, 3).is_zero());
    CHECK(nu_k(xx, 0) == xx);
    CHECK_THROWS_AS(nu_k(TensorVector::pure(U1, {LBL_X}), 1), ScopeError);
}

TEST_CASE("nu_bar values") {
    CHECK(nu_bar(TensorVector::single(U1F2, AlgebraElement::X(U1F2))) ==
          TensorVector::single(U1F2, AlgebraElement::one(U1F2)));
    CHECK(nu_bar(TensorVector::pure(U1F2, {LBL_ONE, LBL_ONE})).is_zero());
    // nu_bar(X tensor X) = 1 X + X 1 + h (1 1), by enumerating nu_1 + h nu_2
    TensorVector xx = TensorVector::pure(U1F2, {LBL_X, LBL_X});
    TensorVector expect(U1F2, 2);
    expect.add_term({LBL_ONE, LBL_X}, RingElement::one(U1F2->R));
    expect.add_term({LBL_X, LBL_ONE}, RingElement::one(U1F2->R));
    expect.add_term({LBL_ONE, LBL_ONE}, rv(U1F2, "h"));
    CHECK(nu_bar(xx) == expect);
}

TEST_CASE("duality on basis elements") {
    CHECK(dualize(AlgebraElement::one(U2)) == DualElement(U2, RingElement::one(U2->R), RingElement::zero(U2->R)));
    // beta(1, X) = 1
    CHECK(pairing(AlgebraElement::one(U2), AlgebraElement::X(U2)) == RingElement::one(U2->R));
    // {1, X} and {Y, 1} mutually dual
    CHECK(pairing(AlgebraElement::one(U2), AlgebraElement::Y(U2)) == RingElement::one(U2->R));
    CHECK(pairing(AlgebraElement::X(U2), AlgebraElement::one(U2)) == RingElement::one(U2->R));
    CHECK(pairing(AlgebraElement::X(U2), AlgebraElement::Y(U2)).is_zero());
    // sigma-hat_D(D(X)) = D(sigma-hat(X)) = D(X - h)
    DualElement DX = dualize(AlgebraElement::X(U2));
    CHECK(dual_involution(DX) == dualize(involution(AlgebraElement::X(U2), InvKind::SigmaHat)));
}

TEST_CASE("base changes") {
    BaseRing Z = BaseRing::integers();
    // u2 -> u1 kills t: X*X = hX + t maps to hX
    const Arrow& a = get_arrow("u2_to_u1", Z);
    AlgebraElement xx = multiply(AlgebraElement::X(U2), AlgebraElement::X(U2));
    TensorVector img = base_change(TensorVector::single(U2, xx), a);
    CHECK(img == TensorVector::single(U1, AlgebraElement::X(U1) * rv(U1, "h")));
    // s : u1 -> u1xu1 sends X to X - a1
    const Arrow& s = get_arrow("u1_to_u1xu1", Z);
    TensorVector sx = base_change(TensorVector::single(U1, AlgebraElement::X(U1)), s);
    AlgebraElement X1(UA, -rv(UA, "a1"), RingElement::one(UA->R));
    CHECK(sx == TensorVector::single(UA, X1));
    // u1 -> su2sqrt sends h to 2 st
    const Theory* SQ = Theory::get(TheoryTag::SU2Sqrt, Z);
    const Arrow& w = get_arrow("u1_to_su2sqrt", Z);
    TensorVector hh = base_change(TensorVector::single(U1, AlgebraElement::one(U1) * rv(U1, "h")), w);
    CHECK(hh == TensorVector::single(SQ, AlgebraElement::one(SQ) * (rv(SQ, "st") * RingElement::of_int(SQ->R, 2))));
    CHECK_THROWS_AS(get_arrow("u1_to_u2", Z), ScopeError);
}

TEST_CASE("randomized identity suites, small sample") {
    VerifyOptions opt;
    opt.seed = 42;
    opt.samples = 300;
    VerifyReport rep = verify_frobenius_suite(opt);
    for (const auto& item : rep.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
    CHECK(rep.all_pass());
}
