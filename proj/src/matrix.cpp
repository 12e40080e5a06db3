#include "khx/matrix.hpp"

#include <sstream>

namespace khx {

SparseMat::SparseMat(const GroundRing* R, int nrows, int ncols)
    : ring_(R), nrows_(nrows), ncols_(ncols), rows_(nrows), cols_(ncols) {}

SparseMat SparseMat::identity(const GroundRing* R, int n) {
    SparseMat m(R, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, RingElement::one(R));
    return m;
}

size_t SparseMat::nnz() const {
    size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

const RingElement* SparseMat::get(int i, int j) const {
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? nullptr : &it->second;
}

RingElement SparseMat::at(int i, int j) const {
    const RingElement* p = get(i, j);
    return p ? *p : RingElement::zero(ring_);
}

void SparseMat::set(int i, int j, const RingElement& v) {
    if (v.is_zero()) {
        rows_[i].erase(j);
        cols_[j].erase(i);
    } else {
        rows_[i][j] = v;
        cols_[j].insert(i);
    }
}

void SparseMat::add_at(int i, int j, const RingElement& v) {
    if (v.is_zero()) return;
    auto it = rows_[i].find(j);
    if (it == rows_[i].end()) {
        set(i, j, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) {
            rows_[i].erase(it);
            cols_[j].erase(i);
        }
    }
}

SparseVec SparseMat::col(int j) const {
    SparseVec v;
    for (int i : cols_[j]) v.emplace(i, rows_[i].at(j));
    return v;
}

void SparseMat::swap_rows(int a, int b) {
    if (a == b) return;
    std::swap(rows_[a], rows_[b]);
    for (auto& cs : cols_) {
        bool ia = cs.count(a), ib = cs.count(b);
        if (ia != ib) {
            if (ia) { cs.erase(a); cs.insert(b); }
            else    { cs.erase(b); cs.insert(a); }
        }
    }
}

void SparseMat::swap_cols(int a, int b) {
    if (a == b) return;
    std::swap(cols_[a], cols_[b]);
    std::set<int> touched;
    for (int i : cols_[a]) touched.insert(i);
    for (int i : cols_[b]) touched.insert(i);
    for (int i : touched) {
        auto& r = rows_[i];
        auto ita = r.find(a), itb = r.find(b);
        RingElement va = ita == r.end() ? RingElement::zero(ring_) : ita->second;
        RingElement vb = itb == r.end() ? RingElement::zero(ring_) : itb->second;
        if (ita != r.end()) r.erase(ita);
        itb = r.find(b);
        if (itb != r.end()) r.erase(itb);
        if (!vb.is_zero()) r[a] = vb;
        if (!va.is_zero()) r[b] = va;
    }
}

void SparseMat::addmul_row(int i, int j, const RingElement& c) {
    if (c.is_zero() || i == j) return;
    for (const auto& [jj, v] : SparseVec(rows_[j])) add_at(i, jj, v * c);
}

void SparseMat::addmul_col(int i, int j, const RingElement& c) {
    if (c.is_zero() || i == j) return;
    for (int r : std::set<int>(cols_[j])) add_at(r, i, rows_[r].at(j) * c);
}

void SparseMat::scale_row(int i, const Scalar& u) {
    for (auto& [j, v] : rows_[i]) v = v * u;
}

void SparseMat::scale_col(int j, const Scalar& u) {
    for (int i : cols_[j]) rows_[i][j] = rows_[i][j] * u;
}

SparseMat SparseMat::mul(const SparseMat& o) const {
    if (ncols_ != o.nrows_) throw Error("matrix dimension mismatch in mul");
    SparseMat out(ring_, nrows_, o.ncols_);
    for (int i = 0; i < nrows_; ++i)
        for (const auto& [k, a] : rows_[i])
            for (const auto& [j, b] : o.rows_[k]) out.add_at(i, j, a * b);
    return out;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [k, c] : v) {
        for (int i : cols_[k]) {
            RingElement e = rows_[i].at(k) * c;
            if (e.is_zero()) continue;
            auto it = out.find(i);
            if (it == out.end()) {
                out.emplace(i, e);
            } else {
                it->second += e;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

SparseMat SparseMat::transpose() const {
    SparseMat out(ring_, ncols_, nrows_);
    for_each([&](int i, int j, const RingElement& v) { out.set(j, i, v); });
    return out;
}

bool SparseMat::is_identity() const {
    if (nrows_ != ncols_) return false;
    if (nnz() != (size_t)nrows_) return false;
    for (int i = 0; i < nrows_; ++i) {
        const RingElement* d = get(i, i);
        if (!d || !d->is_one()) return false;
    }
    return true;
}

bool SparseMat::operator==(const SparseMat& o) const {
    if (nrows_ != o.nrows_ || ncols_ != o.ncols_) return false;
    for (int i = 0; i < nrows_; ++i)
        if (rows_[i] != o.rows_[i]) return false;
    return true;
}

void SparseMat::for_each(const std::function<void(int, int, const RingElement&)>& f) const {
    for (int i = 0; i < nrows_; ++i)
        for (const auto& [j, v] : rows_[i]) f(i, j, v);
}

std::string SparseMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < nrows_; ++i) {
        os << "[";
        for (int j = 0; j < ncols_; ++j) os << (j ? ", " : " ") << at(i, j).str();
        os << " ]\n";
    }
    return os.str();
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) {
    SparseVec out = a;
    for (const auto& [i, v] : b) {
        auto it = out.find(i);
        if (it == out.end()) {
            out.emplace(i, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

SparseVec sv_scale(const SparseVec& a, const RingElement& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [i, v] : a) {
        RingElement e = v * c;
        if (!e.is_zero()) out.emplace(i, e);
    }
    return out;
}

bool sv_is_zero(const SparseVec& a) { return a.empty(); }

}  // namespace khx
