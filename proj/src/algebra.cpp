#include "khx/algebra.hpp"

#include <array>
#include <sstream>

namespace khx {

AlgebraElement AlgebraElement::zero(const Theory* th) {
    return {th, RingElement::zero(th->R), RingElement::zero(th->R)};
}
AlgebraElement AlgebraElement::one(const Theory* th) {
    return {th, RingElement::one(th->R), RingElement::zero(th->R)};
}
AlgebraElement AlgebraElement::X(const Theory* th) {
    return {th, RingElement::zero(th->R), RingElement::one(th->R)};
}
AlgebraElement AlgebraElement::Y(const Theory* th) {
    return {th, -th->rel_h, RingElement::one(th->R)};
}
AlgebraElement AlgebraElement::U(const Theory* th) {
    return {th, -th->rel_h, RingElement::of_int(th->R, 2)};
}

static void check_theory(const Theory* a, const Theory* b) {
    if (a != b) throw Error("theory mismatch in algebra operation");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    check_theory(th_, o.th_);
    return {th_, c0_ + o.c0_, c1_ + o.c1_};
}
AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    check_theory(th_, o.th_);
    return {th_, c0_ - o.c0_, c1_ - o.c1_};
}
AlgebraElement AlgebraElement::operator-() const { return {th_, -c0_, -c1_}; }
AlgebraElement AlgebraElement::operator*(const RingElement& c) const {
    return {th_, c0_ * c, c1_ * c};
}
bool AlgebraElement::operator==(const AlgebraElement& o) const {
    check_theory(th_, o.th_);
    return c0_ == o.c0_ && c1_ == o.c1_;
}

std::string AlgebraElement::str() const {
    return "(" + c0_.str() + ") + (" + c1_.str() + ")X";
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    check_theory(a.theory(), b.theory());
    const Theory* th = a.theory();
    // (a0 + a1 X)(b0 + b1 X) with X^2 = rel_h X + rel_t
    RingElement xx = a.c1() * b.c1();
    return {th, a.c0() * b.c0() + xx * th->rel_t,
            a.c0() * b.c1() + a.c1() * b.c0() + xx * th->rel_h};
}

RingElement counit(const AlgebraElement& a) { return a.c1(); }

AlgebraElement unit(const Theory* th, const RingElement& r) {
    return {th, r, RingElement::zero(th->R)};
}

RingElement pairing(const AlgebraElement& a, const AlgebraElement& b) {
    return counit(multiply(a, b));
}

TensorVector TensorVector::pure(const Theory* th, const Labels& l) {
    TensorVector t(th, (int)l.size());
    t.terms_.emplace(l, RingElement::one(th->R));
    return t;
}

TensorVector TensorVector::single(const Theory* th, const AlgebraElement& a) {
    TensorVector t(th, 1);
    t.add_term({LBL_ONE}, a.c0());
    t.add_term({LBL_X}, a.c1());
    return t;
}

void TensorVector::add_term(const Labels& l, const RingElement& c) {
    if ((int)l.size() != len_) throw Error("tensor length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(l);
    if (it == terms_.end()) {
        terms_.emplace(l, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorVector TensorVector::operator+(const TensorVector& o) const {
    check_theory(th_, o.th_);
    if (len_ != o.len_) throw Error("tensor length mismatch");
    TensorVector t(*this);
    for (const auto& [l, c] : o.terms_) t.add_term(l, c);
    return t;
}
TensorVector TensorVector::operator-(const TensorVector& o) const { return *this + (-o); }
TensorVector TensorVector::operator-() const {
    TensorVector t(th_, len_);
    for (const auto& [l, c] : terms_) t.terms_.emplace(l, -c);
    return t;
}
TensorVector TensorVector::operator*(const RingElement& c) const {
    TensorVector t(th_, len_);
    for (const auto& [l, v] : terms_) t.add_term(l, v * c);
    return t;
}
bool TensorVector::operator==(const TensorVector& o) const {
    check_theory(th_, o.th_);
    return len_ == o.len_ && terms_ == o.terms_;
}

std::optional<int> TensorVector::homogeneous_qdeg() const {
    if (terms_.empty()) return std::nullopt;
    std::optional<int> deg;
    for (const auto& [l, c] : terms_) {
        auto cd = c.homogeneous_qdeg();
        if (!cd) return std::nullopt;
        int d = *cd;
        for (uint8_t x : l) d += x == LBL_X ? 2 : 0;
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

TensorVector TensorVector::concat(const TensorVector& x, const TensorVector& y) {
    check_theory(x.th_, y.th_);
    TensorVector t(x.th_, x.len_ + y.len_);
    for (const auto& [la, ca] : x.terms_) {
        for (const auto& [lb, cb] : y.terms_) {
            Labels l = la;
            l.insert(l.end(), lb.begin(), lb.end());
            t.add_term(l, ca * cb);
        }
    }
    return t;
}

std::string TensorVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (uint8_t x : l) os << (x == LBL_X ? ".X" : ".1");
    }
    return os.str();
}

TensorVector comultiply(const AlgebraElement& a) {
    const Theory* th = a.theory();
    TensorVector t(th, 2);
    // Delta(1) = 1 X + X 1 - rel_h (1 1), Delta(X) = X X + rel_t (1 1)
    t.add_term({LBL_ONE, LBL_ONE}, a.c1() * th->rel_t - a.c0() * th->rel_h);
    t.add_term({LBL_ONE, LBL_X}, a.c0());
    t.add_term({LBL_X, LBL_ONE}, a.c0());
    t.add_term({LBL_X, LBL_X}, a.c1());
    return t;
}

static AlgebraElement label_elem(const Theory* th, uint8_t l) {
    return l == LBL_X ? AlgebraElement::X(th) : AlgebraElement::one(th);
}

TensorVector multiply_factor(const TensorVector& x, int k, const AlgebraElement& a) {
    const Theory* th = x.theory();
    TensorVector out(th, x.length());
    for (const auto& [l, c] : x.terms()) {
        AlgebraElement p = multiply(label_elem(th, l[k]), a);
        Labels l0 = l;
        l0[k] = LBL_ONE;
        out.add_term(l0, c * p.c0());
        Labels l1 = l;
        l1[k] = LBL_X;
        out.add_term(l1, c * p.c1());
    }
    return out;
}

TensorVector merge_factors(const TensorVector& x, int i, int j, int target_pos) {
    const Theory* th = x.theory();
    TensorVector out(th, x.length() - 1);
    for (const auto& [l, c] : x.terms()) {
        AlgebraElement p = multiply(label_elem(th, l[i]), label_elem(th, l[j]));
        Labels rest;
        rest.reserve(l.size() - 1);
        for (int k = 0; k < (int)l.size(); ++k)
            if (k != i && k != j) rest.push_back(l[k]);
        Labels l0 = rest;
        l0.insert(l0.begin() + target_pos, LBL_ONE);
        out.add_term(l0, c * p.c0());
        Labels l1 = rest;
        l1.insert(l1.begin() + target_pos, LBL_X);
        out.add_term(l1, c * p.c1());
    }
    return out;
}

TensorVector split_factor(const TensorVector& x, int k, int pos1, int pos2) {
    const Theory* th = x.theory();
    TensorVector out(th, x.length() + 1);
    for (const auto& [l, c] : x.terms()) {
        TensorVector d = comultiply(label_elem(th, l[k]));
        Labels rest;
        rest.reserve(l.size() - 1);
        for (int p = 0; p < (int)l.size(); ++p)
            if (p != k) rest.push_back(l[p]);
        for (const auto& [dl, dc] : d.terms()) {
            Labels nl = rest;
            int first = std::min(pos1, pos2), second = std::max(pos1, pos2);
            nl.insert(nl.begin() + first, dl[pos1 < pos2 ? 0 : 1]);
            nl.insert(nl.begin() + second, dl[pos1 < pos2 ? 1 : 0]);
            out.add_term(nl, c * dc);
        }
    }
    return out;
}

AlgebraElement involution(const AlgebraElement& a, InvKind kind) {
    const Theory* th = a.theory();
    RingElement a0 = th->coeff_action(kind, a.c0());
    RingElement a1 = th->coeff_action(kind, a.c1());
    AlgebraElement xim =
        kind == InvKind::Sigma
            ? AlgebraElement(th, th->rel_h, -RingElement::one(th->R))
            : kind == InvKind::SigmaHat
                  ? AlgebraElement(th, -th->rel_h, RingElement::one(th->R))
                  : AlgebraElement::X(th);
    return unit(th, a0) + xim * a1;
}

TensorVector involution(const TensorVector& x, InvKind kind) {
    const Theory* th = x.theory();
    AlgebraElement xim =
        kind == InvKind::Sigma
            ? AlgebraElement(th, th->rel_h, -RingElement::one(th->R))
            : kind == InvKind::SigmaHat
                  ? AlgebraElement(th, -th->rel_h, RingElement::one(th->R))
                  : AlgebraElement::X(th);
    TensorVector out(th, x.length());
    for (const auto& [l, c] : x.terms()) {
        // expand the product of per-factor images
        std::map<Labels, RingElement> acc;
        acc.emplace(Labels{}, th->coeff_action(kind, c));
        for (uint8_t lab : l) {
            std::map<Labels, RingElement> next;
            for (const auto& [pl, pc] : acc) {
                if (lab == LBL_ONE) {
                    Labels nl = pl;
                    nl.push_back(LBL_ONE);
                    auto [it, fresh] = next.emplace(nl, pc);
                    if (!fresh) it->second += pc;
                } else {
                    if (!xim.c0().is_zero()) {
                        Labels nl = pl;
                        nl.push_back(LBL_ONE);
                        RingElement v = pc * xim.c0();
                        auto [it, fresh] = next.emplace(nl, v);
                        if (!fresh) it->second += v;
                    }
                    Labels nl = pl;
                    nl.push_back(LBL_X);
                    RingElement v = pc * xim.c1();
                    auto [it, fresh] = next.emplace(nl, v);
                    if (!fresh) it->second += v;
                }
            }
            acc = std::move(next);
        }
        for (const auto& [nl, nc] : acc) out.add_term(nl, nc);
    }
    return out;
}

TensorVector nu_hat(const TensorVector& x) {
    const Theory* th = x.theory();
    if (!th->has_nu()) throw ScopeError("nu undefined for theory " + th->name());
    TensorVector num = x - involution(x, th->nu_involution());
    RingElement div = th->nu_divisor();
    TensorVector out(th, x.length());
    for (const auto& [l, c] : num.terms()) out.add_term(l, c.div_exact(div));
    return out;
}

AlgebraElement nu_hat(const AlgebraElement& a) {
    const Theory* th = a.theory();
    TensorVector t = nu_hat(TensorVector::single(th, a));
    RingElement c0 = RingElement::zero(th->R), c1 = c0;
    for (const auto& [l, c] : t.terms()) (l[0] == LBL_X ? c1 : c0) += c;
    return {th, c0, c1};
}

TensorVector nu_k(const TensorVector& x, int k) {
    const Theory* th = x.theory();
    if (th->R->characteristic() != 2)
        throw ScopeError("nu_k requires characteristic 2");
    if (k == 0) return x;
    TensorVector out(th, x.length());
    for (const auto& [l, c] : x.terms()) {
        std::vector<int> xpos;
        for (int i = 0; i < (int)l.size(); ++i)
            if (l[i] == LBL_X) xpos.push_back(i);
        if ((int)xpos.size() < k) continue;
        // all k-subsets of X positions, each replaced by 1
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Labels nl = l;
            for (int i : idx) nl[xpos[i]] = LBL_ONE;
            out.add_term(nl, c);
            int i = k - 1;
            while (i >= 0 && idx[i] == (int)xpos.size() - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

TensorVector nu_bar(const TensorVector& x) {
    const Theory* th = x.theory();
    if (th->tag != TheoryTag::U1) throw ScopeError("nu_bar is defined for the u1 theory");
    if (th->R->characteristic() != 2) throw ScopeError("nu_bar requires characteristic 2");
    TensorVector out(th, x.length());
    RingElement hpow = RingElement::one(th->R);
    for (int k = 1; k <= x.length(); ++k) {
        out = out + nu_k(x, k) * hpow;
        hpow = hpow * th->rel_h;
    }
    return out;
}

TensorVector base_change(const TensorVector& x, const Arrow& a) {
    if (x.theory() != a.from) throw Error("base_change: tensor not over the source theory");
    const Theory* to = a.to;
    AlgebraElement xim(to, a.x_shift, RingElement::one(to->R));
    TensorVector out(to, x.length());
    for (const auto& [l, c] : x.terms()) {
        TensorVector acc(to, 0);
        acc.add_term({}, a.map_scalar(c));
        for (uint8_t lab : l) {
            TensorVector fac =
                lab == LBL_X ? TensorVector::single(to, xim)
                             : TensorVector::single(to, AlgebraElement::one(to));
            acc = TensorVector::concat(acc, fac);
        }
        out = out + acc;
    }
    return out;
}

AlgebraElement base_change(const AlgebraElement& x, const Arrow& a) {
    TensorVector t = base_change(TensorVector::single(x.theory(), x), a);
    RingElement c0 = RingElement::zero(a.to->R), c1 = c0;
    for (const auto& [l, c] : t.terms()) (l[0] == LBL_X ? c1 : c0) += c;
    return {a.to, c0, c1};
}

// --- duality -------------------------------------------------------------

RingElement DualElement::value_on_X() const { return d0_ + d1_ * th_->rel_h; }

DualElement DualElement::from_values(const Theory* th, const RingElement& v1, const RingElement& vX) {
    return {th, vX - v1 * th->rel_h, v1};
}

DualElement DualElement::operator+(const DualElement& o) const {
    check_theory(th_, o.th_);
    return {th_, d0_ + o.d0_, d1_ + o.d1_};
}
DualElement DualElement::operator*(const RingElement& c) const {
    return {th_, d0_ * c, d1_ * c};
}
bool DualElement::operator==(const DualElement& o) const {
    check_theory(th_, o.th_);
    return d0_ == o.d0_ && d1_ == o.d1_;
}
std::string DualElement::str() const {
    return "(" + d0_.str() + ")D(1) + (" + d1_.str() + ")D(X)";
}

DualElement dualize(const AlgebraElement& a) {
    return {a.theory(), a.c0(), a.c1()};
}

DualElement dual_involution(const DualElement& f) {
    const Theory* th = f.theory();
    RingElement v1 = th->sigma0(f.value_on_one());
    RingElement vX = th->sigma0(f.value_on_X() - f.value_on_one() * th->rel_h);
    return DualElement::from_values(th, v1, vX);
}

DualElement dual_mul(const DualElement& f, const DualElement& g) {
    check_theory(f.theory(), g.theory());
    const Theory* th = f.theory();
    auto pair_value = [&](const TensorVector& t) {
        RingElement v = RingElement::zero(th->R);
        for (const auto& [l, c] : t.terms()) {
            RingElement fv = l[0] == LBL_X ? f.value_on_X() : f.value_on_one();
            RingElement gv = l[1] == LBL_X ? g.value_on_X() : g.value_on_one();
            v += c * fv * gv;
        }
        return v;
    };
    RingElement v1 = pair_value(comultiply(AlgebraElement::one(th)));
    RingElement vX = pair_value(comultiply(AlgebraElement::X(th)));
    return DualElement::from_values(th, v1, vX);
}

DualElement dual_unit(const Theory* th, const RingElement& r) {
    return {th, r, RingElement::zero(th->R)};
}

RingElement dual_counit(const DualElement& f) { return f.value_on_one(); }

std::array<RingElement, 4> dual_comul(const DualElement& f) {
    const Theory* th = f.theory();
    // M[u][v] = f(u * v) for u, v in {1, X}; solve B^T C B = M with
    // B[x][u] = pairing(x, u), B = [[0, 1], [1, rel_h]], B^{-1} = [[-rel_h, 1], [1, 0]].
    RingElement m11 = f.value_on_one();
    RingElement m1x = f.value_on_X();
    AlgebraElement xx = multiply(AlgebraElement::X(th), AlgebraElement::X(th));
    RingElement mxx = f.value_on_one() * xx.c0() + f.value_on_X() * xx.c1();
    RingElement h = th->rel_h;
    // C = Binv^T M Binv with Binv = [[-h, 1], [1, 0]]
    // N = M Binv: N[u][0] = -h M[u][0] + M[u][1]; N[u][1] = M[u][0]
    RingElement n00 = m11 * (-h) + m1x, n01 = m11;
    RingElement n10 = m1x * (-h) + mxx, n11 = m1x;
    // C = Binv^T N: C[0][*] = -h N[0][*] + N[1][*]; C[1][*] = N[0][*]
    return {n00 * (-h) + n10, n01 * (-h) + n11, n00, n01};
}

}  // namespace khx
