// Exact base-ring scalars: arbitrary-precision integers and rationals via GMP,
// and prime fields F_p with p kept reduced.
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace khx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ScopeError : Error {
    using Error::Error;
};
// Raised when a runtime verification (cycle check, chain-map equation,
// exact-division check, route cross-check) fails.
struct CheckError : Error {
    using Error::Error;
};

enum class BaseKind : uint8_t { Z, Q, Fp };

bool is_prime(uint32_t n);

struct BaseRing {
    BaseKind kind = BaseKind::Z;
    uint32_t p = 0;  // prime modulus for Fp

    static BaseRing integers() { return {BaseKind::Z, 0}; }
    static BaseRing rationals() { return {BaseKind::Q, 0}; }
    static BaseRing prime_field(uint32_t p);

    bool is_field() const { return kind != BaseKind::Z; }
    uint32_t characteristic() const { return kind == BaseKind::Fp ? p : 0; }
    bool operator==(const BaseRing&) const = default;
    std::string name() const;
};

// A value in one of Z, Q, F_p. Scalars of different base rings never mix.
class Scalar {
public:
    Scalar() = default;
    static Scalar zero(const BaseRing& R) { return of_int(R, 0); }
    static Scalar one(const BaseRing& R) { return of_int(R, 1); }
    static Scalar of_int(const BaseRing& R, long v);
    static Scalar of_mpz(const BaseRing& R, const mpz_class& v);
    static Scalar of_mpq(const mpq_class& v);

    const BaseRing& base() const { return base_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order used only for deterministic output and pivot tie-breaks.
    bool operator<(const Scalar& o) const;

    // Exact division; throws CheckError if o does not divide *this.
    Scalar div_exact(const Scalar& o) const;
    // Multiplicative inverse of a unit.
    Scalar inverse() const;
    // Euclidean division for Z: *this = q*o + r with |r| <= |o|/2.
    // For fields: q = *this/o, r = 0.
    void divmod(const Scalar& o, Scalar& q, Scalar& r) const;
    static Scalar gcd(const Scalar& a, const Scalar& b);

    // True if 2 is invertible (characteristic != 2 fields, and Q).
    bool divisible_by_int(long n) const;
    Scalar div_int_exact(long n) const;

    std::string str() const;
    // Integer content for Z-scalars; |value| as mpz. Field scalars report 1.
    mpz_class znorm() const;
    // Underlying integer for Z and F_p scalars.
    const mpz_class& zvalue() const { return z_; }

private:
    BaseRing base_;
    mpz_class z_;  // Z value, or Fp residue in [0, p)
    mpq_class q_;
    void check_same(const Scalar& o) const;
};

}  // namespace khx
