#include "khx/snf.hpp"

namespace khx {

namespace {

struct SnfWorker {
    SparseMat S, P, Pinv, Q, Qinv;
    std::vector<int> row_q, col_q;
    bool graded;

    explicit SnfWorker(const SparseMat& M, std::vector<int> rq, std::vector<int> cq)
        : S(M),
          P(SparseMat::identity(M.ring(), M.nrows())),
          Pinv(SparseMat::identity(M.ring(), M.nrows())),
          Q(SparseMat::identity(M.ring(), M.ncols())),
          Qinv(SparseMat::identity(M.ring(), M.ncols())),
          row_q(std::move(rq)),
          col_q(std::move(cq)),
          graded(!row_q.empty() || !col_q.empty()) {}

    void swap_rows(int a, int b) {
        if (a == b) return;
        S.swap_rows(a, b);
        P.swap_rows(a, b);
        Pinv.swap_cols(a, b);
        if (graded) std::swap(row_q[a], row_q[b]);
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        S.swap_cols(a, b);
        Q.swap_cols(a, b);
        Qinv.swap_rows(a, b);
        if (graded) std::swap(col_q[a], col_q[b]);
    }
    void addmul_row(int i, int j, const RingElement& c) {
        if (graded && !c.is_zero()) {
            auto d = c.homogeneous_qdeg();
            if (!d || *d != row_q[j] - row_q[i])
                throw CheckError("inhomogeneous row operation in graded SNF");
        }
        S.addmul_row(i, j, c);
        P.addmul_row(i, j, c);
        Pinv.addmul_col(j, i, -c);
    }
    void addmul_col(int i, int j, const RingElement& c) {
        if (graded && !c.is_zero()) {
            auto d = c.homogeneous_qdeg();
            if (!d || *d != col_q[i] - col_q[j])
                throw CheckError("inhomogeneous column operation in graded SNF");
        }
        S.addmul_col(i, j, c);
        Q.addmul_col(i, j, c);
        Qinv.addmul_row(j, i, -c);
    }
    void scale_row(int i, const Scalar& u) {
        S.scale_row(i, u);
        P.scale_row(i, u);
        Pinv.scale_col(i, u.inverse());
    }

    // (norm, row, col) minimal pivot in the trailing submatrix
    bool find_pivot(int t, int& pi, int& pj) const {
        bool found = false;
        mpz_class best;
        for (int i = t; i < S.nrows(); ++i) {
            for (const auto& [j, v] : S.row(i)) {
                if (j < t) continue;
                mpz_class n = v.euclidean_norm();
                if (!found || n < best) {
                    found = true;
                    best = n;
                    pi = i;
                    pj = j;
                }
            }
        }
        return found;
    }

    void run() {
        if (!S.ring()->is_euclidean())
            throw ScopeError("Smith normal form requires a Euclidean ground ring, not " + S.ring()->name());
        int t = 0;
        const int tmax = std::min(S.nrows(), S.ncols());
        while (t < tmax) {
            int pi, pj;
            if (!find_pivot(t, pi, pj)) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool settled = false;
            while (!settled) {
                settled = true;
                // clear column t below and above
                bool restart = false;
                for (int i : std::set<int>(S.col_support(t))) {
                    if (i == t) continue;
                    RingElement q, r;
                    S.at(i, t).divmod(S.at(t, t), q, r);
                    addmul_row(i, t, -q);
                    if (!r.is_zero()) {
                        swap_rows(t, i);
                        restart = true;
                        break;
                    }
                }
                if (restart) { settled = false; continue; }
                for (const auto& [j, v] : SparseVec(S.row(t))) {
                    if (j == t) continue;
                    RingElement q, r;
                    v.divmod(S.at(t, t), q, r);
                    addmul_col(j, t, -q);
                    if (!r.is_zero()) {
                        swap_cols(t, j);
                        restart = true;
                        break;
                    }
                }
                if (restart) { settled = false; continue; }
                // pivot must divide the whole trailing submatrix
                for (int i = t + 1; i < S.nrows() && settled; ++i) {
                    for (const auto& [j, v] : S.row(i)) {
                        if (j <= t) continue;
                        RingElement q, r;
                        v.divmod(S.at(t, t), q, r);
                        if (!r.is_zero()) {
                            addmul_row(t, i, RingElement::one(S.ring()));
                            settled = false;
                            break;
                        }
                    }
                }
            }
            scale_row(t, S.at(t, t).canonical_unit());
            ++t;
        }
    }
};

}  // namespace

bool is_matrix_homogeneous(const SparseMat& M, const std::vector<int>& row_q, const std::vector<int>& col_q) {
    bool ok = true;
    M.for_each([&](int i, int j, const RingElement& v) {
        auto d = v.homogeneous_qdeg();
        if (!d || *d != col_q[j] - row_q[i]) ok = false;
    });
    return ok;
}

SnfResult smith_normal_form(const SparseMat& M) {
    return smith_normal_form_graded(M, {}, {});
}

SnfResult smith_normal_form_graded(const SparseMat& M, std::vector<int> row_q, std::vector<int> col_q) {
    if (!row_q.empty() || !col_q.empty()) {
        if ((int)row_q.size() != M.nrows() || (int)col_q.size() != M.ncols())
            throw Error("graded SNF: degree vector size mismatch");
        if (!is_matrix_homogeneous(M, row_q, col_q))
            throw CheckError("graded SNF: input matrix not homogeneous");
    }
    SnfWorker w(M, std::move(row_q), std::move(col_q));
    w.run();
    SnfResult res;
    res.rank = 0;
    for (int t = 0; t < std::min(w.S.nrows(), w.S.ncols()); ++t) {
        const RingElement* d = w.S.get(t, t);
        if (!d) break;
        res.invariant_factors.push_back(*d);
        ++res.rank;
    }
    res.S = std::move(w.S);
    res.P = std::move(w.P);
    res.Pinv = std::move(w.Pinv);
    res.Q = std::move(w.Q);
    res.Qinv = std::move(w.Qinv);
    res.row_q = std::move(w.row_q);
    res.col_q = std::move(w.col_q);
    return res;
}

}  // namespace khx
