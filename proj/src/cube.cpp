#include "khx/cube.hpp"

#include "khx/snf.hpp"

#include <algorithm>
#include <sstream>

namespace khx {

namespace {

int popcount(uint32_t v) { return __builtin_popcount(v); }

int edge_sign(uint32_t v, int c) {
    int ones = popcount(v & ((1u << c) - 1));
    return ones % 2 == 0 ? +1 : -1;
}

struct EdgeMap {
    bool is_merge = false;
    int src_a = -1, src_b = -1;  // merged circles (is_merge)
    int src_s = -1;              // split circle
    int dst_m = -1;              // merge target
    int dst_s1 = -1, dst_s2 = -1;  // split targets
    std::vector<int> other;      // src circle -> dst circle for untouched ones
};

EdgeMap match_circles(const Resolution& a, const Resolution& b) {
    EdgeMap e;
    e.other.assign(a.circles.size(), -1);
    std::map<std::vector<int>, int> bidx;
    for (size_t j = 0; j < b.circles.size(); ++j) bidx[b.circles[j]] = (int)j;
    std::vector<int> a_left, b_left;
    std::vector<char> b_used(b.circles.size(), 0);
    for (size_t i = 0; i < a.circles.size(); ++i) {
        auto it = bidx.find(a.circles[i]);
        if (it != bidx.end()) {
            e.other[i] = it->second;
            b_used[it->second] = 1;
        } else {
            a_left.push_back((int)i);
        }
    }
    for (size_t j = 0; j < b.circles.size(); ++j)
        if (!b_used[j]) b_left.push_back((int)j);
    if (a_left.size() == 2 && b_left.size() == 1) {
        e.is_merge = true;
        e.src_a = a_left[0];
        e.src_b = a_left[1];
        e.dst_m = b_left[0];
    } else if (a_left.size() == 1 && b_left.size() == 2) {
        e.is_merge = false;
        e.src_s = a_left[0];
        e.dst_s1 = b_left[0];
        e.dst_s2 = b_left[1];
    } else {
        throw Error("cube edge does not merge or split exactly one pair of circles");
    }
    return e;
}

}  // namespace

AlgebraElement CubeComplex::label_elem(uint8_t l) const {
    switch (l) {
        case CL_ONE: return AlgebraElement::one(th);
        case CL_X: return AlgebraElement::X(th);
        case CL_R1: return {th, -th->root1, RingElement::one(th->R)};
        case CL_R2: return {th, -th->root2, RingElement::one(th->R)};
    }
    throw Error("bad circle label");
}

RingElement CubeComplex::root_coord(uint8_t root_label, const RingElement& a0,
                                    const RingElement& a1) const {
    const RingElement& root = root_label == CL_R1 ? th->root1 : th->root2;
    if (!(a0 == -(a1 * root)))
        throw CheckError("element leaves the reduced subcomplex");
    return a1;
}

int CubeComplex::gen_at(int i, uint32_t vertex, const Labels& l) const {
    const auto& m = index[i - i_min];
    auto it = m.find({vertex, l});
    if (it == m.end()) throw Error("no such generator");
    return it->second;
}

const SparseMat& CubeComplex::d(int i) const {
    static SparseMat empty;
    if (i < i_min || i >= i_max) {
        return empty;
    }
    return diff[i - i_min];
}

std::vector<int> CubeComplex::qdegs(int i) const {
    std::vector<int> out;
    for (const auto& g : degree(i)) out.push_back(g.q);
    return out;
}

size_t CubeComplex::total_rank() const {
    size_t n = 0;
    for (const auto& gs : gens) n += gs.size();
    return n;
}

CubeComplex build_complex(const LinkDiagram& dia, const Theory* th, ReducedMode reduced) {
    CubeComplex cx;
    cx.th = th;
    cx.dia = dia;
    cx.reduced = reduced;
    cx.n_plus = dia.n_plus;
    cx.n_minus = dia.n_minus;
    cx.i_min = -dia.n_minus;
    cx.i_max = dia.n_plus;
    if (reduced != ReducedMode::None) {
        if (!dia.basepoint) throw ScopeError("reduced complex requires a basepoint");
        if (!th->has_roots)
            throw ScopeError("reduced complex undefined for theory " + th->name() +
                             ": defining quadratic does not factor");
    }

    int n = dia.n_crossings();
    cx.res.resize(1u << n);
    for (uint32_t v = 0; v < (1u << n); ++v) {
        std::vector<uint8_t> vert(n);
        for (int c = 0; c < n; ++c) vert[c] = (v >> c) & 1;
        cx.res[v] = resolve(dia, vert);
    }

    int ndeg = cx.i_max - cx.i_min + 1;
    cx.gens.resize(ndeg);
    cx.index.resize(ndeg);

    uint8_t pointed_label = reduced == ReducedMode::Root1 ? CL_R1 : CL_R2;
    cx.vertex_span.assign(1u << n, {0, 0});
    for (uint32_t v = 0; v < (1u << n); ++v) {
        int i = popcount(v) - cx.n_minus;
        int k = i - cx.i_min;
        const Resolution& r = cx.res[v];
        int nc = (int)r.circles.size();
        cx.vertex_span[v].first = (int)cx.gens[k].size();
        Labels l(nc, CL_ONE);
        // enumerate labelings; the pointed circle is fixed in reduced mode
        int free = reduced == ReducedMode::None ? nc : nc - 1;
        for (uint32_t mask = 0; mask < (1u << free); ++mask) {
            int bit = 0;
            for (int ci = 0; ci < nc; ++ci) {
                if (reduced != ReducedMode::None && ci == r.pointed_circle) {
                    l[ci] = pointed_label;
                } else {
                    l[ci] = (mask >> bit) & 1 ? CL_X : CL_ONE;
                    ++bit;
                }
            }
            CubeGenerator g;
            g.vertex = v;
            g.labels = l;
            int deg = 0;
            for (uint8_t x : l) deg += x == CL_ONE ? 0 : 2;
            g.q = deg - nc - popcount(v) - cx.n_plus + 2 * cx.n_minus -
                  (reduced != ReducedMode::None ? 1 : 0);
            cx.index[k][{v, l}] = (int)cx.gens[k].size();
            cx.gens[k].push_back(std::move(g));
            cx.vertex_span[v].second++;
        }
    }

    // differentials
    cx.diff.clear();
    for (int k = 0; k + 1 < ndeg; ++k)
        cx.diff.emplace_back(th->R, (int)cx.gens[k + 1].size(), (int)cx.gens[k].size());

    for (uint32_t v = 0; v < (1u << n); ++v) {
        int k = popcount(v) - cx.n_minus - cx.i_min;
        for (int c = 0; c < n; ++c) {
            if ((v >> c) & 1) continue;
            uint32_t w = v | (1u << c);
            EdgeMap em = match_circles(cx.res[v], cx.res[w]);
            RingElement sgn = RingElement::of_int(th->R, edge_sign(v, c));
            auto [first, count] = cx.vertex_span[v];
            for (int col = first; col < first + count; ++col) {
                const Labels& l = cx.gens[k][col].labels;
                Labels outl(cx.res[w].circles.size(), CL_ONE);
                for (size_t ci = 0; ci < l.size(); ++ci)
                    if (em.other[ci] >= 0) outl[em.other[ci]] = l[ci];
                auto emit = [&](const Labels& full, const RingElement& coeff) {
                    if (coeff.is_zero()) return;
                    int row = cx.gen_at(popcount(w) - cx.n_minus, w, full);
                    cx.diff[k].add_at(row, col, coeff * sgn);
                };
                if (em.is_merge) {
                    AlgebraElement p =
                        multiply(cx.label_elem(l[em.src_a]), cx.label_elem(l[em.src_b]));
                    Labels full = outl;
                    if (reduced != ReducedMode::None &&
                        em.dst_m == cx.res[w].pointed_circle) {
                        full[em.dst_m] = pointed_label;
                        emit(full, cx.root_coord(pointed_label, p.c0(), p.c1()));
                    } else {
                        full[em.dst_m] = CL_ONE;
                        emit(full, p.c0());
                        full[em.dst_m] = CL_X;
                        emit(full, p.c1());
                    }
                } else {
                    TensorVector delta = comultiply(cx.label_elem(l[em.src_s]));
                    // delta terms live on positions (dst_s1, dst_s2)
                    std::array<std::array<RingElement, 2>, 2> coef{
                        {{RingElement::zero(th->R), RingElement::zero(th->R)},
                         {RingElement::zero(th->R), RingElement::zero(th->R)}}};
                    for (const auto& [dl, dc] : delta.terms())
                        coef[dl[0] == LBL_X ? 1 : 0][dl[1] == LBL_X ? 1 : 0] += dc;
                    int pc = reduced != ReducedMode::None ? cx.res[w].pointed_circle : -1;
                    if (pc >= 0 && (pc == em.dst_s1 || pc == em.dst_s2)) {
                        int pother = pc == em.dst_s1 ? em.dst_s2 : em.dst_s1;
                        for (int ol = 0; ol < 2; ++ol) {
                            // pointed coordinate of (c0 + c1 X) tensor factor
                            RingElement a0 = pc == em.dst_s1 ? coef[0][ol] : coef[ol][0];
                            RingElement a1 = pc == em.dst_s1 ? coef[1][ol] : coef[ol][1];
                            Labels full = outl;
                            full[pc] = pointed_label;
                            full[pother] = ol ? CL_X : CL_ONE;
                            emit(full, cx.root_coord(pointed_label, a0, a1));
                        }
                    } else {
                        for (int l1 = 0; l1 < 2; ++l1) {
                            for (int l2 = 0; l2 < 2; ++l2) {
                                Labels full = outl;
                                full[em.dst_s1] = l1 ? CL_X : CL_ONE;
                                full[em.dst_s2] = l2 ? CL_X : CL_ONE;
                                emit(full, coef[l1][l2]);
                            }
                        }
                    }
                }
            }
        }
    }

    // d composed with d vanishes, and every entry is homogeneous of degree 0
    for (int k = 0; k + 1 < ndeg; ++k) {
        if (!is_matrix_homogeneous(cx.diff[k], cx.qdegs(cx.i_min + k + 1), cx.qdegs(cx.i_min + k)))
            throw CheckError("differential is not quantum-degree homogeneous");
        if (k + 2 < ndeg && !cx.diff[k + 1].mul(cx.diff[k]).is_zero())
            throw CheckError("d^2 != 0 in cube complex");
    }
    return cx;
}

bool ChainVector::operator==(const ChainVector& o) const {
    return cx == o.cx && i == o.i && coords == o.coords;
}

ChainVector ChainVector::operator+(const ChainVector& o) const {
    if (cx != o.cx || i != o.i) throw Error("chain vector degree mismatch");
    return {cx, i, sv_add(coords, o.coords)};
}

ChainVector ChainVector::operator-(const ChainVector& o) const {
    return *this + o * RingElement::of_int(cx->th->R, -1);
}

ChainVector ChainVector::operator*(const RingElement& c) const {
    return {cx, i, sv_scale(coords, c)};
}

std::optional<int> ChainVector::homogeneous_qdeg() const {
    std::optional<int> deg;
    for (const auto& [g, c] : coords) {
        auto cd = c.homogeneous_qdeg();
        if (!cd) return std::nullopt;
        int d = *cd + cx->degree(i)[g].q;
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::string ChainVector::str() const {
    if (coords.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : coords) {
        const CubeGenerator& gen = cx->degree(i)[g];
        os << (first ? "" : " + ") << "(" << c.str() << ")*[v=";
        for (int b = 0; b < cx->dia.n_crossings(); ++b) os << ((gen.vertex >> b) & 1);
        os << ";";
        for (uint8_t l : gen.labels) os << "1X12"[l];
        os << "]";
        first = false;
    }
    return os.str();
}

ChainVector apply_d(const ChainVector& z) {
    const CubeComplex& cx = *z.cx;
    if (z.i >= cx.i_max) return zero_chain(cx, z.i + 1);
    return {z.cx, z.i + 1, cx.d(z.i).apply(z.coords)};
}

ChainVector zero_chain(const CubeComplex& cx, int i) { return {&cx, i, {}}; }

ChainVector gen_chain(const CubeComplex& cx, int i, int idx) {
    ChainVector z{&cx, i, {}};
    z.coords.emplace(idx, RingElement::one(cx.th->R));
    return z;
}

}  // namespace khx
