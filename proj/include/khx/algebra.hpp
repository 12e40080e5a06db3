// The Frobenius algebra A of a theory, its tensor powers, involutions and
// nu-type operations, and the U(2) dual algebra in the standard basis
// {D(1), D(X)} of the pairing beta = counit . m.
#pragma once

#include "khx/theory.hpp"

#include <array>
#include <map>

namespace khx {

// Element a0 * 1 + a1 * X of A, reduced by the defining relation.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const Theory* th, RingElement c0, RingElement c1)
        : th_(th), c0_(std::move(c0)), c1_(std::move(c1)) {}
    static AlgebraElement zero(const Theory* th);
    static AlgebraElement one(const Theory* th);
    static AlgebraElement X(const Theory* th);
    static AlgebraElement Y(const Theory* th);  // X - rel_h
    static AlgebraElement U(const Theory* th);  // 2X - rel_h

    const Theory* theory() const { return th_; }
    const RingElement& c0() const { return c0_; }
    const RingElement& c1() const { return c1_; }
    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const RingElement& c) const;
    bool operator==(const AlgebraElement& o) const;

    std::string str() const;

private:
    const Theory* th_ = nullptr;
    RingElement c0_, c1_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
RingElement counit(const AlgebraElement& a);
AlgebraElement unit(const Theory* th, const RingElement& r);
// The nondegenerate pairing beta(a, b) = counit(a * b).
RingElement pairing(const AlgebraElement& a, const AlgebraElement& b);

// Pure-tensor basis labels; 0 encodes 1 and 1 encodes X.
using Labels = std::vector<uint8_t>;
constexpr uint8_t LBL_ONE = 0;
constexpr uint8_t LBL_X = 1;

// Finite R-linear combination of pure tensors of a fixed length r >= 0.
class TensorVector {
public:
    TensorVector() = default;
    TensorVector(const Theory* th, int len) : th_(th), len_(len) {}
    static TensorVector pure(const Theory* th, const Labels& l);
    static TensorVector single(const Theory* th, const AlgebraElement& a);  // r = 1

    const Theory* theory() const { return th_; }
    int length() const { return len_; }
    const std::map<Labels, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Labels& l, const RingElement& c);
    TensorVector operator+(const TensorVector& o) const;
    TensorVector operator-(const TensorVector& o) const;
    TensorVector operator-() const;
    TensorVector operator*(const RingElement& c) const;
    bool operator==(const TensorVector& o) const;
    bool operator!=(const TensorVector& o) const { return !(*this == o); }

    // Quantum degree of the pure part: 2 per X label plus coefficient degree.
    std::optional<int> homogeneous_qdeg() const;

    // x tensor y concatenation.
    static TensorVector concat(const TensorVector& x, const TensorVector& y);

    std::string str() const;

private:
    const Theory* th_ = nullptr;
    int len_ = 0;
    std::map<Labels, RingElement> terms_;
};

// Frobenius structure maps, factor-indexed where relevant.
TensorVector comultiply(const AlgebraElement& a);          // Delta: A -> A tensor A
TensorVector multiply_factor(const TensorVector& x, int k, const AlgebraElement& a);
TensorVector merge_factors(const TensorVector& x, int i, int j, int target_pos);
TensorVector split_factor(const TensorVector& x, int k, int pos1, int pos2);

// Involutions sigma, sigma-hat, sigma_alpha, sigma_sqrt(t), applied factor-wise
// with the matching coefficient action.
TensorVector involution(const TensorVector& x, InvKind kind);
AlgebraElement involution(const AlgebraElement& a, InvKind kind);

// nu-type operation of the theory: (id - involution)/divisor, exact division.
TensorVector nu_hat(const TensorVector& x);
AlgebraElement nu_hat(const AlgebraElement& a);

// Characteristic-2 combinatorial Shumakovitch operations.
TensorVector nu_k(const TensorVector& x, int k);
TensorVector nu_bar(const TensorVector& x);

// Image under a registered theory homomorphism.
TensorVector base_change(const TensorVector& x, const Arrow& a);
AlgebraElement base_change(const AlgebraElement& x, const Arrow& a);

// --- U(2) duality ------------------------------------------------------

// d0 * D(1) + d1 * D(X) in the standard basis of A*.
class DualElement {
public:
    DualElement() = default;
    DualElement(const Theory* th, RingElement d0, RingElement d1)
        : th_(th), d0_(std::move(d0)), d1_(std::move(d1)) {}

    const Theory* theory() const { return th_; }
    const RingElement& d0() const { return d0_; }
    const RingElement& d1() const { return d1_; }

    // Functional values.
    RingElement value_on_one() const { return d1_; }
    RingElement value_on_X() const;
    static DualElement from_values(const Theory* th, const RingElement& v1, const RingElement& vX);

    DualElement operator+(const DualElement& o) const;
    DualElement operator*(const RingElement& c) const;
    bool operator==(const DualElement& o) const;
    std::string str() const;

private:
    const Theory* th_ = nullptr;
    RingElement d0_, d1_;
};

DualElement dualize(const AlgebraElement& a);
// sigma-hat_D(f) = sigma0 . f . sigma-hat_1
DualElement dual_involution(const DualElement& f);
// Dual Frobenius structure computed from functional composition.
DualElement dual_mul(const DualElement& f, const DualElement& g);  // Delta*
DualElement dual_unit(const Theory* th, const RingElement& r);     // eps*
RingElement dual_counit(const DualElement& f);                     // iota*
// m*: A* -> A* tensor A*, coefficients c[x][y] on D(x) tensor D(y).
std::array<RingElement, 4> dual_comul(const DualElement& f);

}  // namespace khx
