#include "khx/scalar.hpp"

namespace khx {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

BaseRing BaseRing::prime_field(uint32_t p) {
    if (!is_prime(p)) throw ScopeError("F_p requires a prime p, got " + std::to_string(p));
    return {BaseKind::Fp, p};
}

std::string BaseRing::name() const {
    switch (kind) {
        case BaseKind::Z: return "Z";
        case BaseKind::Q: return "Q";
        case BaseKind::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

Scalar Scalar::of_int(const BaseRing& R, long v) {
    return of_mpz(R, mpz_class(v));
}

Scalar Scalar::of_mpz(const BaseRing& R, const mpz_class& v) {
    Scalar s;
    s.base_ = R;
    switch (R.kind) {
        case BaseKind::Z: s.z_ = v; break;
        case BaseKind::Q: s.q_ = mpq_class(v); break;
        case BaseKind::Fp: {
            mpz_class r = v % R.p;
            if (r < 0) r += R.p;
            s.z_ = r;
            break;
        }
    }
    return s;
}

Scalar Scalar::of_mpq(const mpq_class& v) {
    Scalar s;
    s.base_ = BaseRing::rationals();
    s.q_ = v;
    s.q_.canonicalize();
    return s;
}

void Scalar::check_same(const Scalar& o) const {
    if (!(base_ == o.base_)) throw Error("scalar base ring mismatch: " + base_.name() + " vs " + o.base_.name());
}

bool Scalar::is_zero() const {
    return base_.kind == BaseKind::Q ? q_ == 0 : z_ == 0;
}

bool Scalar::is_one() const {
    return base_.kind == BaseKind::Q ? q_ == 1 : z_ == 1;
}

bool Scalar::is_unit() const {
    switch (base_.kind) {
        case BaseKind::Z: return z_ == 1 || z_ == -1;
        default: return !is_zero();
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.base_ = base_;
    switch (base_.kind) {
        case BaseKind::Z: s.z_ = z_ + o.z_; break;
        case BaseKind::Q: s.q_ = q_ + o.q_; break;
        case BaseKind::Fp: s.z_ = (z_ + o.z_) % base_.p; break;
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    return *this + (-o);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.base_ = base_;
    switch (base_.kind) {
        case BaseKind::Z: s.z_ = z_ * o.z_; break;
        case BaseKind::Q: s.q_ = q_ * o.q_; break;
        case BaseKind::Fp: s.z_ = (z_ * o.z_) % base_.p; break;
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s;
    s.base_ = base_;
    switch (base_.kind) {
        case BaseKind::Z: s.z_ = -z_; break;
        case BaseKind::Q: s.q_ = -q_; break;
        case BaseKind::Fp: s.z_ = z_ == 0 ? mpz_class(0) : mpz_class(base_.p - z_); break;
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(base_ == o.base_)) return false;
    return base_.kind == BaseKind::Q ? q_ == o.q_ : z_ == o.z_;
}

bool Scalar::operator<(const Scalar& o) const {
    check_same(o);
    return base_.kind == BaseKind::Q ? q_ < o.q_ : z_ < o.z_;
}

Scalar Scalar::div_exact(const Scalar& o) const {
    check_same(o);
    if (o.is_zero()) throw CheckError("division by zero");
    Scalar s;
    s.base_ = base_;
    switch (base_.kind) {
        case BaseKind::Z: {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), z_.get_mpz_t(), o.z_.get_mpz_t());
            if (r != 0) throw CheckError("inexact integer division");
            s.z_ = q;
            break;
        }
        case BaseKind::Q: s.q_ = q_ / o.q_; break;
        case BaseKind::Fp: s = *this * o.inverse(); break;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (!is_unit()) throw CheckError("inverse of non-unit " + str());
    Scalar s;
    s.base_ = base_;
    switch (base_.kind) {
        case BaseKind::Z: s.z_ = z_; break;
        case BaseKind::Q: s.q_ = 1 / q_; break;
        case BaseKind::Fp: {
            mpz_class inv, p(base_.p);
            if (mpz_invert(inv.get_mpz_t(), z_.get_mpz_t(), p.get_mpz_t()) == 0)
                throw CheckError("non-invertible residue");
            s.z_ = inv;
            break;
        }
    }
    return s;
}

void Scalar::divmod(const Scalar& o, Scalar& q, Scalar& r) const {
    check_same(o);
    if (o.is_zero()) throw CheckError("division by zero");
    q.base_ = r.base_ = base_;
    if (base_.kind == BaseKind::Z) {
        mpz_class qq, rr;
        mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), z_.get_mpz_t(), o.z_.get_mpz_t());
        // symmetric remainder keeps pivots small
        mpz_class ao = abs(o.z_);
        if (rr * 2 > ao) {
            rr -= ao;
            qq += o.z_ > 0 ? 1 : -1;
        }
        q.z_ = qq;
        r.z_ = rr;
    } else {
        q = div_exact(o);
        r = Scalar::zero(base_);
    }
}

Scalar Scalar::gcd(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar s;
    s.base_ = a.base_;
    if (a.base_.kind == BaseKind::Z) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.z_.get_mpz_t(), b.z_.get_mpz_t());
        s.z_ = g;
        return s;
    }
    return (a.is_zero() && b.is_zero()) ? Scalar::zero(a.base_) : Scalar::one(a.base_);
}

bool Scalar::divisible_by_int(long n) const {
    Scalar d = of_int(base_, n);
    if (d.is_zero()) return is_zero();
    if (base_.kind != BaseKind::Z) return true;
    return z_ % d.z_ == 0;
}

Scalar Scalar::div_int_exact(long n) const {
    return div_exact(of_int(base_, n));
}

std::string Scalar::str() const {
    return base_.kind == BaseKind::Q ? q_.get_str() : z_.get_str();
}

mpz_class Scalar::znorm() const {
    if (base_.kind == BaseKind::Z) return abs(z_);
    return is_zero() ? mpz_class(0) : mpz_class(1);
}

}  // namespace khx
