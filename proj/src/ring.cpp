#include "khx/ring.hpp"

#include <algorithm>
#include <sstream>

namespace khx {

GroundRing::GroundRing(BaseRing b, std::vector<VarSpec> v) : base(b), vars(std::move(v)) {
    for (const auto& vs : vars) {
        if (vs.qdeg <= 0 || vs.qdeg % 2 != 0)
            throw ScopeError("ring variable " + vs.name + " must have positive even degree");
    }
}

int GroundRing::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return (int)i;
    throw Error("no variable " + name + " in " + this->name());
}

bool GroundRing::operator==(const GroundRing& o) const {
    if (!(base == o.base) || vars.size() != o.vars.size()) return false;
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name != o.vars[i].name || vars[i].qdeg != o.vars[i].qdeg) return false;
    return true;
}

std::string GroundRing::name() const {
    std::string s = base.name();
    if (!vars.empty()) {
        s += "[";
        for (size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i].name;
        s += "]";
    }
    return s;
}

bool GroundRing::is_euclidean() const {
    if (vars.empty()) return true;                      // field or Z
    return vars.size() == 1 && base.is_field();        // F[x]
}

RingElement RingElement::one(const GroundRing* R) {
    return of_int(R, 1);
}

RingElement RingElement::of_int(const GroundRing* R, long v) {
    return of_scalar(R, Scalar::of_int(R->base, v));
}

RingElement RingElement::of_scalar(const GroundRing* R, const Scalar& s) {
    RingElement e(R);
    e.add_term(Mono(R->nvars(), 0), s);
    return e;
}

RingElement RingElement::variable(const GroundRing* R, const std::string& name, int exp) {
    Mono m(R->nvars(), 0);
    m[R->var_index(name)] = (uint16_t)exp;
    return monomial(R, m, Scalar::one(R->base));
}

RingElement RingElement::monomial(const GroundRing* R, const Mono& m, const Scalar& c) {
    RingElement e(R);
    e.add_term(m, c);
    return e;
}

void RingElement::add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void RingElement::check_ring(const RingElement& o) const {
    if (!(ring_ == o.ring_ || (ring_ && o.ring_ && *ring_ == *o.ring_)))
        throw Error("ring mismatch in polynomial arithmetic");
}

bool RingElement::is_one() const {
    return terms_.size() == 1 && terms_.begin()->second.is_one() &&
           terms_.begin()->first == Mono(ring_->nvars(), 0);
}

bool RingElement::is_unit() const {
    return terms_.size() == 1 && terms_.begin()->second.is_unit() &&
           terms_.begin()->first == Mono(ring_->nvars(), 0);
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_ring(o);
    RingElement e(*this);
    for (const auto& [m, c] : o.terms_) e.add_term(m, c);
    return e;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

RingElement RingElement::operator-(const RingElement& o) const {
    return *this + (-o);
}

RingElement RingElement::operator-() const {
    RingElement e(ring_);
    for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
    return e;
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_ring(o);
    RingElement e(ring_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(ma);
            for (size_t i = 0; i < m.size(); ++i) m[i] = (uint16_t)(m[i] + mb[i]);
            e.add_term(m, ca * cb);
        }
    }
    return e;
}

RingElement RingElement::operator*(const Scalar& c) const {
    RingElement e(ring_);
    for (const auto& [m, a] : terms_) e.add_term(m, a * c);
    return e;
}

bool RingElement::operator==(const RingElement& o) const {
    check_ring(o);
    return terms_ == o.terms_;
}

bool RingElement::operator<(const RingElement& o) const {
    check_ring(o);
    auto ait = terms_.begin(), bit = o.terms_.begin();
    for (; ait != terms_.end() && bit != o.terms_.end(); ++ait, ++bit) {
        if (ait->first != bit->first) return ait->first < bit->first;
        if (ait->second != bit->second) return ait->second < bit->second;
    }
    return bit != o.terms_.end();
}

int RingElement::mono_qdeg(const Mono& m) const {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * ring_->vars[i].qdeg;
    return d;
}

std::optional<int> RingElement::homogeneous_qdeg() const {
    if (terms_.empty()) return std::nullopt;
    int d = mono_qdeg(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (mono_qdeg(m) != d) return std::nullopt;
    return d;
}

std::pair<Mono, Scalar> RingElement::lead() const {
    if (terms_.empty()) throw Error("lead of zero");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
}

void RingElement::divmod(const RingElement& d, RingElement& q, RingElement& r) const {
    check_ring(d);
    if (!ring_->is_euclidean())
        throw ScopeError("divmod requires a Euclidean ring, not " + ring_->name());
    if (d.is_zero()) throw CheckError("division by zero polynomial");
    q = RingElement::zero(ring_);
    r = *this;
    if (ring_->nvars() == 0) {
        Scalar qs, rs;
        Scalar a = terms_.empty() ? Scalar::zero(ring_->base) : terms_.begin()->second;
        Scalar b = d.terms_.begin()->second;
        a.divmod(b, qs, rs);
        q = RingElement::of_scalar(ring_, qs);
        r = RingElement::of_scalar(ring_, rs);
        return;
    }
    // univariate over a field: classical long division
    auto [dm, dc] = d.lead();
    int dd = dm[0];
    while (!r.is_zero()) {
        auto [rm, rc] = r.lead();
        if (rm[0] < dd) break;
        Mono m(1, (uint16_t)(rm[0] - dd));
        RingElement step = RingElement::monomial(ring_, m, rc.div_exact(dc));
        q += step;
        r = r - step * d;
    }
}

mpz_class RingElement::euclidean_norm() const {
    if (is_zero()) return 0;
    if (ring_->nvars() == 0) {
        if (ring_->base.kind == BaseKind::Z) return terms_.begin()->second.znorm();
        return 1;
    }
    return mpz_class(lead().first[0] + 1);
}

RingElement RingElement::euclidean_gcd(const RingElement& a, const RingElement& b) {
    RingElement x = a, y = b, q, r;
    while (!y.is_zero()) {
        x.divmod(y, q, r);
        x = y;
        y = r;
    }
    return x.normalized();
}

RingElement RingElement::div_exact(const RingElement& d) const {
    check_ring(d);
    if (d.is_zero()) throw CheckError("division by zero polynomial");
    // long division by the lex-leading term; exactness is checked
    RingElement q = RingElement::zero(ring_);
    RingElement r = *this;
    auto [dm, dc] = d.lead();
    while (!r.is_zero()) {
        auto [rm, rc] = r.lead();
        Mono m(rm.size());
        bool ok = true;
        for (size_t i = 0; i < rm.size(); ++i) {
            if (rm[i] < dm[i]) { ok = false; break; }
            m[i] = (uint16_t)(rm[i] - dm[i]);
        }
        Scalar cs;
        if (ok) {
            if (ring_->base.kind == BaseKind::Z) {
                Scalar qq, rr;
                rc.divmod(dc, qq, rr);
                if (!rr.is_zero()) ok = false;
                cs = qq;
            } else {
                cs = rc.div_exact(dc);
            }
        }
        if (!ok) throw CheckError("inexact polynomial division: " + str() + " by " + d.str());
        RingElement step = RingElement::monomial(ring_, m, cs);
        q += step;
        r = r - step * d;
    }
    return q;
}

RingElement RingElement::inverse() const {
    if (!is_unit()) throw CheckError("inverse of non-unit " + str());
    RingElement e(ring_);
    e.add_term(terms_.begin()->first, terms_.begin()->second.inverse());
    return e;
}

Scalar RingElement::canonical_unit() const {
    if (is_zero()) return Scalar::one(ring_->base);
    Scalar lc = lead().second;
    if (ring_->base.kind == BaseKind::Z)
        return Scalar::of_int(ring_->base, lc < Scalar::zero(ring_->base) ? -1 : 1);
    return lc.inverse();
}

RingElement RingElement::substituted(const GroundRing* target, const std::vector<RingElement>& var_images) const {
    if (var_images.size() != ring_->nvars()) throw Error("substitution arity mismatch");
    RingElement out(target);
    for (const auto& [m, c] : terms_) {
        Scalar cc = c;
        if (!(c.base() == target->base)) {
            if (c.base().kind != BaseKind::Z)
                throw ScopeError("base change only from Z coefficients");
            cc = Scalar::of_mpz(target->base, c.zvalue());
        }
        RingElement term = RingElement::of_scalar(target, cc);
        for (size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) term = term * var_images[i];
        out += term;
    }
    return out;
}

RingElement RingElement::degree_sign_twisted() const {
    RingElement e(ring_);
    for (const auto& [m, c] : terms_) {
        int d = mono_qdeg(m);
        e.terms_.emplace(m, (d / 2) % 2 == 0 ? c : -c);
    }
    return e;
}

RingElement RingElement::vars_swapped(int va, int vb) const {
    RingElement e(ring_);
    for (const auto& [m, c] : terms_) {
        Mono mm(m);
        std::swap(mm[va], mm[vb]);
        e.add_term(mm, c);
    }
    return e;
}

std::string RingElement::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest monomial first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::string ms;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!ms.empty()) ms += "*";
            ms += ring_->vars[i].name;
            if (m[i] > 1) ms += "^" + std::to_string(m[i]);
        }
        if (ms.empty()) {
            os << cs;
        } else {
            if (cs != "1") os << cs << "*";
            os << ms;
        }
    }
    return os.str();
}

}  // namespace khx
