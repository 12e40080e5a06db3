// Graded polynomial ground rings and sparse exact polynomials.
//
// A GroundRing is Z, Q or F_p extended by finitely many graded variables
// (h, t, a1, a2, st for sqrt(t)), every variable of positive even quantum
// degree. RingElement is a sparse monomial -> coefficient map with no stored
// zeros.
#pragma once

#include "khx/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace khx {

struct VarSpec {
    std::string name;
    int qdeg;  // positive, even
};

struct GroundRing {
    BaseRing base;
    std::vector<VarSpec> vars;

    GroundRing() = default;
    GroundRing(BaseRing b, std::vector<VarSpec> v);

    size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const;
    bool operator==(const GroundRing& o) const;
    std::string name() const;

    // Euclidean rings here: fields, Z, and univariate polynomials over a field.
    bool is_euclidean() const;
    bool is_field() const { return base.is_field() && vars.empty(); }
    uint32_t characteristic() const { return base.characteristic(); }
};

// Exponent vector; size equals the ring's variable count.
using Mono = std::vector<uint16_t>;

class RingElement {
public:
    RingElement() : ring_(nullptr) {}
    explicit RingElement(const GroundRing* R) : ring_(R) {}

    static RingElement zero(const GroundRing* R) { return RingElement(R); }
    static RingElement one(const GroundRing* R);
    static RingElement of_int(const GroundRing* R, long v);
    static RingElement of_scalar(const GroundRing* R, const Scalar& s);
    static RingElement variable(const GroundRing* R, const std::string& name, int exp = 1);
    static RingElement monomial(const GroundRing* R, const Mono& m, const Scalar& c);

    const GroundRing* ring() const { return ring_; }
    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_unit() const;
    size_t nterms() const { return terms_.size(); }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const Scalar& c) const;
    RingElement& operator+=(const RingElement& o);
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    // Deterministic total order for stable sorting of output.
    bool operator<(const RingElement& o) const;

    // Quantum degree of the monomial part, ignoring coefficients.
    int mono_qdeg(const Mono& m) const;
    // Degree of a homogeneous element; nullopt for 0 or inhomogeneous input.
    std::optional<int> homogeneous_qdeg() const;
    bool is_homogeneous() const { return terms_.empty() || homogeneous_qdeg().has_value(); }

    // Euclidean structure. divmod requires a field, Z, or a univariate
    // polynomial ring over a field; throws ScopeError otherwise.
    void divmod(const RingElement& d, RingElement& q, RingElement& r) const;
    // Euclidean size: |n| for Z, polynomial degree + 1 shifted for F[x],
    // 1 for nonzero field elements. Zero reports 0.
    mpz_class euclidean_norm() const;
    static RingElement euclidean_gcd(const RingElement& a, const RingElement& b);

    // Exact division in any ring here (domain); throws CheckError when the
    // divisor does not divide. Used for nu-type operations.
    RingElement div_exact(const RingElement& d) const;
    RingElement inverse() const;

    // The unit u with u * (*this) canonical: monic leading coefficient over
    // fields / positive leading coefficient over Z. Zero maps to 1.
    Scalar canonical_unit() const;
    RingElement normalized() const { return *this * canonical_unit(); }

    // Coefficient-wise ring map: substitute variables by images in the target
    // ring, map scalars Z -> target base when needed.
    RingElement substituted(const GroundRing* target, const std::vector<RingElement>& var_images) const;
    // Same ring, coefficient sign flip per monomial: m -> (-1)^(qdeg(m)/2) m.
    RingElement degree_sign_twisted() const;
    // Same ring, swap two variables in every monomial.
    RingElement vars_swapped(int va, int vb) const;

    std::string str() const;

private:
    const GroundRing* ring_;
    std::map<Mono, Scalar> terms_;
    void add_term(const Mono& m, const Scalar& c);
    void check_ring(const RingElement& o) const;
    // Leading term in lex order (last variable most significant).
    std::pair<Mono, Scalar> lead() const;
    friend class SparseMat;
};

}  // namespace khx
