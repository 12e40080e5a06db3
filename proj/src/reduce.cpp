#include "khx/reduce.hpp"

#include "khx/snf.hpp"

namespace khx {

const SparseMat& ReducedComplexData::diff(int i) const {
    static SparseMat empty;
    if (i < i_min || i >= i_max) return empty;
    return d[i - i_min];
}

namespace {

bool entry_is_unit(const RingElement& v) {
    return v.is_unit();
}

}  // namespace

ReducedComplexData morse_reduce(const CubeComplex& cx) {
    ReducedComplexData out;
    out.cx = &cx;
    out.i_min = cx.i_min;
    out.i_max = cx.i_max;
    int ndeg = cx.i_max - cx.i_min + 1;
    out.qdeg.resize(ndeg);
    for (int k = 0; k < ndeg; ++k) out.qdeg[k] = cx.qdegs(cx.i_min + k);
    for (int k = 0; k + 1 < ndeg; ++k) out.d.push_back(cx.d(cx.i_min + k));
    for (int k = 0; k < ndeg; ++k) {
        out.rho.push_back(SparseMat::identity(cx.th->R, (int)out.qdeg[k].size()));
        out.iota.push_back(SparseMat::identity(cx.th->R, (int)out.qdeg[k].size()));
    }
    std::vector<std::vector<char>> alive(ndeg);
    for (int k = 0; k < ndeg; ++k) alive[k].assign(out.qdeg[k].size(), 1);

    // repeatedly cancel the unit pivot of least Markowitz cost
    while (true) {
        int bk = -1, br = -1, bc = -1;
        long best = -1;
        for (int k = 0; k + 1 < ndeg; ++k) {
            const SparseMat& m = out.d[k];
            for (int r = 0; r < m.nrows(); ++r) {
                if (!alive[k + 1][r]) continue;
                for (const auto& [c, v] : m.row(r)) {
                    if (!entry_is_unit(v)) continue;
                    long cost = (long)(m.row(r).size() - 1) *
                                (long)(m.col_support(c).size() - 1);
                    if (best < 0 || cost < best) {
                        best = cost;
                        bk = k;
                        br = r;
                        bc = c;
                        if (best == 0) break;
                    }
                }
                if (best == 0) break;
            }
            if (best == 0) break;
        }
        if (bk < 0) break;

        SparseMat& m = out.d[bk];
        RingElement uinv = m.at(br, bc).inverse();
        SparseVec gamma = m.col(bc);   // degree k+1 components of d(c)
        SparseVec delta(m.row(br));    // row r over degree-k generators
        gamma.erase(br);
        delta.erase(bc);

        // Schur complement update of d_k
        for (const auto& [y, gy] : gamma) {
            RingElement coef = gy * uinv;
            for (const auto& [x, dx] : delta) m.add_at(y, x, -(coef * dx));
        }
        // clear the eliminated row and column
        for (const auto& [x, v] : SparseVec(m.row(br))) m.set(br, x, RingElement::zero(cx.th->R));
        for (int y : std::set<int>(m.col_support(bc))) m.set(y, bc, RingElement::zero(cx.th->R));
        // degree k-1: drop the c-row (it maps into a dead generator)
        if (bk > 0) {
            SparseMat& p = out.d[bk - 1];
            for (const auto& [x, v] : SparseVec(p.row(bc))) p.set(bc, x, RingElement::zero(cx.th->R));
        }
        // degree k+1: drop the r-column
        if (bk + 2 < ndeg) {
            SparseMat& nmat = out.d[bk + 1];
            for (int y : std::set<int>(nmat.col_support(br)))
                nmat.set(y, br, RingElement::zero(cx.th->R));
        }

        // rho at degree k+1: row x -= gamma_x u^{-1} row r, then kill row r
        {
            SparseMat& rr = out.rho[bk + 1];
            for (const auto& [y, gy] : gamma) rr.addmul_row(y, br, -(gy * uinv));
            for (const auto& [x, v] : SparseVec(rr.row(br)))
                rr.set(br, x, RingElement::zero(cx.th->R));
        }
        // rho at degree k: kill row c
        {
            SparseMat& rr = out.rho[bk];
            for (const auto& [x, v] : SparseVec(rr.row(bc)))
                rr.set(bc, x, RingElement::zero(cx.th->R));
        }
        // iota at degree k: col x -= u^{-1} delta_x col c, then kill col c
        {
            SparseMat& io = out.iota[bk];
            for (const auto& [x, dx] : delta) io.addmul_col(x, bc, -(uinv * dx));
            for (int y : std::set<int>(io.col_support(bc)))
                io.set(y, bc, RingElement::zero(cx.th->R));
        }
        // iota at degree k+1: kill col r
        {
            SparseMat& io = out.iota[bk + 1];
            for (int y : std::set<int>(io.col_support(br)))
                io.set(y, br, RingElement::zero(cx.th->R));
        }
        alive[bk][bc] = 0;
        alive[bk + 1][br] = 0;
    }

    // compact: renumber surviving generators
    std::vector<std::vector<int>> newidx(ndeg);
    std::vector<std::vector<int>> q2(ndeg);
    for (int k = 0; k < ndeg; ++k) {
        newidx[k].assign(out.qdeg[k].size(), -1);
        for (size_t g = 0; g < out.qdeg[k].size(); ++g) {
            if (alive[k][g]) {
                newidx[k][g] = (int)q2[k].size();
                q2[k].push_back(out.qdeg[k][g]);
            }
        }
    }
    for (int k = 0; k + 1 < ndeg; ++k) {
        SparseMat nm(cx.th->R, (int)q2[k + 1].size(), (int)q2[k].size());
        out.d[k].for_each([&](int r, int c, const RingElement& v) {
            nm.set(newidx[k + 1][r], newidx[k][c], v);
        });
        out.d[k] = std::move(nm);
    }
    for (int k = 0; k < ndeg; ++k) {
        SparseMat nr(cx.th->R, (int)q2[k].size(), cx.dim(cx.i_min + k));
        out.rho[k].for_each([&](int r, int c, const RingElement& v) {
            if (newidx[k][r] >= 0) nr.set(newidx[k][r], c, v);
        });
        out.rho[k] = std::move(nr);
        SparseMat ni(cx.th->R, cx.dim(cx.i_min + k), (int)q2[k].size());
        out.iota[k].for_each([&](int r, int c, const RingElement& v) {
            if (newidx[k][c] >= 0) ni.set(r, newidx[k][c], v);
        });
        out.iota[k] = std::move(ni);
    }
    out.qdeg = std::move(q2);
    return out;
}

void verify_reduction(const ReducedComplexData& r) {
    const CubeComplex& cx = *r.cx;
    int ndeg = r.i_max - r.i_min + 1;
    for (int k = 0; k + 1 < ndeg; ++k) {
        // d'^2 = 0
        if (k + 2 < ndeg && !r.d[k + 1].mul(r.d[k]).is_zero())
            throw CheckError("reduced differential does not square to zero");
        // rho d = d' rho and d iota = iota d'
        if (!(r.rho[k + 1].mul(cx.d(cx.i_min + k)) == r.d[k].mul(r.rho[k])))
            throw CheckError("rho is not a chain map");
        if (!(cx.d(cx.i_min + k).mul(r.iota[k]) == r.iota[k + 1].mul(r.d[k])))
            throw CheckError("iota is not a chain map");
    }
    for (int k = 0; k < ndeg; ++k) {
        if (!r.rho[k].mul(r.iota[k]).is_identity())
            throw CheckError("rho . iota != id after reduction");
        if (!is_matrix_homogeneous(r.rho[k], r.qdeg[k], cx.qdegs(r.i_min + k)))
            throw CheckError("rho is not graded");
        if (!is_matrix_homogeneous(r.iota[k], cx.qdegs(r.i_min + k), r.qdeg[k]))
            throw CheckError("iota is not graded");
    }
}

}  // namespace khx
