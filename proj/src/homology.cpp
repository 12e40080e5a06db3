#include "khx/homology.hpp"

#include "khx/chainmap.hpp"

#include <algorithm>
#include <sstream>

namespace khx {

std::vector<Summand> GradedModule::free_part() const {
    std::vector<Summand> out;
    for (const auto& s : summands)
        if (s.is_free()) out.push_back(s);
    return out;
}

std::vector<Summand> GradedModule::at_degree(int i) const {
    std::vector<Summand> out;
    for (const auto& s : summands)
        if (s.i == i) out.push_back(s);
    return out;
}

bool GradedModule::operator==(const GradedModule& o) const {
    if (summands.size() != o.summands.size()) return false;
    for (size_t k = 0; k < summands.size(); ++k) {
        const Summand &a = summands[k], &b = o.summands[k];
        if (a.i != b.i || a.q != b.q || !(a.order == b.order)) return false;
    }
    return true;
}

std::string summand_name(const Summand& s, const GroundRing* R) {
    if (s.is_free()) return R->name();
    return R->name() + "/(" + s.order.str() + ")";
}

std::string GradedModule::table() const {
    if (summands.empty()) return "(zero module)\n";
    int imin = summands[0].i, imax = summands[0].i;
    int qmin = summands[0].q, qmax = summands[0].q;
    for (const auto& s : summands) {
        imin = std::min(imin, s.i);
        imax = std::max(imax, s.i);
        qmin = std::min(qmin, s.q);
        qmax = std::max(qmax, s.q);
    }
    std::map<std::pair<int, int>, std::string> cells;
    for (const auto& s : summands) {
        std::string& c = cells[{s.q, s.i}];
        if (!c.empty()) c += ", ";
        c += summand_name(s, ring);
    }
    std::vector<size_t> width(imax - imin + 1, 1);
    for (int i = imin; i <= imax; ++i)
        width[i - imin] = std::to_string(i).size();
    for (const auto& [key, text] : cells)
        width[key.second - imin] = std::max(width[key.second - imin], text.size());
    std::ostringstream os;
    size_t qw = std::max(std::to_string(qmin).size(), std::to_string(qmax).size());
    bool same_parity = true;
    for (const auto& s : summands) same_parity &= (s.q - qmin) % 2 == 0;
    int step = same_parity && qmax > qmin ? 2 : 1;
    for (int q = qmax; q >= qmin; q -= step) {
        os << std::string(qw - std::to_string(q).size(), ' ') << q << " |";
        for (int i = imin; i <= imax; ++i) {
            auto it = cells.find({q, i});
            std::string text = it == cells.end() ? "." : it->second;
            os << " " << text << std::string(width[i - imin] - text.size(), ' ');
        }
        os << "\n";
    }
    os << std::string(qw, ' ') << " +";
    for (int i = imin; i <= imax; ++i) os << std::string(width[i - imin] + 1, '-');
    os << "\n" << std::string(qw, ' ') << "  ";
    for (int i = imin; i <= imax; ++i) {
        std::string t = std::to_string(i);
        os << " " << t << std::string(width[i - imin] - t.size(), ' ');
    }
    os << "\n";
    return os.str();
}

nlohmann::json GradedModule::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : summands) {
        nlohmann::json e{{"i", s.i}, {"q", s.q}};
        if (s.is_free()) {
            e["free"] = true;
        } else {
            e["free"] = false;
            e["order"] = s.order.str();
        }
        arr.push_back(e);
    }
    return {{"schema", "khx.module/1"}, {"ring", ring->name()}, {"summands", arr}};
}

GradedModule HomologyPresentation::module() const {
    GradedModule m;
    m.ring = cx->th->R;
    for (const auto& [i, deg] : degrees) {
        for (size_t a = 0; a < deg.orders.size(); ++a) {
            if (!deg.kept[a]) continue;
            m.summands.push_back({i, deg.pos_q[a], deg.orders[a]});
        }
    }
    std::sort(m.summands.begin(), m.summands.end(), [](const Summand& a, const Summand& b) {
        if (a.i != b.i) return a.i < b.i;
        if (a.q != b.q) return a.q < b.q;
        return a.order.str() < b.order.str();
    });
    return m;
}

ChainVector HomologyPresentation::representative(int i, int pos) const {
    const Degree& deg = degrees.at(i);
    return {cx, i, deg.basis[pos]};
}

HomologyPresentation homology(const CubeComplex& cx) {
    if (!cx.th->R->is_euclidean()) {
        throw ScopeError("homology unavailable over " + cx.th->R->name() +
                         "; use chain-level commands (split, verify, endomorphisms) instead");
    }
    HomologyPresentation H;
    H.cx = &cx;
    H.reduced = morse_reduce(cx);
    const ReducedComplexData& mr = H.reduced;

    std::map<int, SnfResult> snf_d;
    for (int i = cx.i_min; i < cx.i_max; ++i)
        snf_d.emplace(i, smith_normal_form_graded(mr.diff(i), mr.qdeg[i + 1 - mr.i_min],
                                                  mr.qdeg[i - mr.i_min]));

    for (int i = cx.i_min; i <= cx.i_max; ++i) {
        HomologyPresentation::Degree deg;
        deg.i = i;
        int n = mr.dim(i);
        // kernel of the reduced differential, in reduced coordinates
        std::vector<SparseVec> kernel;
        std::vector<int> kernel_q;
        SparseMat extract(cx.th->R, 0, 0);
        if (i < cx.i_max) {
            const SnfResult& A = snf_d.at(i);
            for (int j = A.rank; j < n; ++j) {
                kernel.push_back(A.Q.col(j));
                kernel_q.push_back(A.col_q[j]);
            }
            extract = SparseMat(cx.th->R, (int)kernel.size(), n);
            for (int r = 0; r + A.rank < n; ++r)
                for (const auto& [c, v] : A.Qinv.row(A.rank + r)) extract.set(r, c, v);
        } else {
            for (int j = 0; j < n; ++j) {
                SparseVec e;
                e.emplace(j, RingElement::one(cx.th->R));
                kernel.push_back(std::move(e));
                kernel_q.push_back(mr.qdeg[i - mr.i_min][j]);
            }
            extract = SparseMat::identity(cx.th->R, n);
        }
        int nk = (int)kernel.size();
        deg.coord_rows = extract.mul(mr.rho[i - mr.i_min]);

        // image of the previous differential, in kernel coordinates
        std::vector<SparseVec> image;
        std::vector<int> image_q;
        if (i > cx.i_min) {
            const SnfResult& B = snf_d.at(i - 1);
            for (int j = 0; j < B.rank; ++j) {
                image.push_back(sv_scale(B.Pinv.col(j), B.invariant_factors[j]));
                image_q.push_back(B.col_q[j]);
            }
        }
        SparseMat R(cx.th->R, nk, (int)image.size());
        for (size_t j = 0; j < image.size(); ++j) {
            SparseVec coords = extract.apply(image[j]);
            SparseVec full;
            for (const auto& [b, v] : coords) full = sv_add(full, sv_scale(kernel[b], v));
            if (!(full == image[j])) throw CheckError("image does not lie in the kernel");
            for (const auto& [b, v] : coords) R.set(b, (int)j, v);
        }
        SnfResult snfR = smith_normal_form_graded(R, kernel_q, image_q);
        deg.PR = std::move(snfR.P);
        for (int a = 0; a < nk; ++a) {
            RingElement order =
                a < snfR.rank ? snfR.invariant_factors[a] : RingElement::zero(cx.th->R);
            deg.orders.push_back(order);
            deg.pos_q.push_back(snfR.row_q.empty() ? 0 : snfR.row_q[a]);
            deg.kept.push_back(order.is_unit() ? 0 : 1);
        }
        // presentation basis cycles from Pinv columns, lifted to the original
        // complex and normalized so the lowest-valuation coordinate is canonical
        for (int a = 0; a < nk; ++a) {
            SparseVec red;
            for (const auto& [b, v] : snfR.Pinv.col(a)) red = sv_add(red, sv_scale(kernel[b], v));
            SparseVec orig = mr.lift(i, red);
            if (!orig.empty()) {
                int best_val = -1, best_idx = -1;
                for (const auto& [g, v] : orig) {
                    int val = 1 << 20;
                    for (const auto& [mono, s] : v.terms()) val = std::min(val, v.mono_qdeg(mono));
                    if (best_idx < 0 || val < best_val) {
                        best_val = val;
                        best_idx = g;
                    }
                }
                Scalar u = orig.at(best_idx).canonical_unit();
                if (!u.is_one()) {
                    for (auto& [g, v] : orig) v = v * u;
                    red = sv_scale(red, RingElement::of_scalar(cx.th->R, u));
                    deg.PR.scale_row(a, u.inverse());
                }
            }
            deg.basis.push_back(std::move(orig));
            deg.basis_red.push_back(std::move(red));
        }
        H.degrees.emplace(i, std::move(deg));
    }
    return H;
}

ClassCoordinates class_coordinates(const HomologyPresentation& H, const ChainVector& z) {
    const CubeComplex& cx = *H.cx;
    if (z.cx != &cx) throw Error("chain from a different complex");
    if (!apply_d(z).is_zero()) throw CheckError("class_coordinates: chain is not a cycle");
    const auto& deg = H.degrees.at(z.i);
    SparseVec kc = deg.coord_rows.apply(z.coords);
    SparseVec pc = deg.PR.apply(kc);
    ClassCoordinates out;
    out.i = z.i;
    // the extracted coordinates must reconstruct the projected cycle
    SparseVec check;
    for (size_t a = 0; a < deg.orders.size(); ++a) {
        auto it = pc.find((int)a);
        if (it != pc.end() && !it->second.is_zero())
            check = sv_add(check, sv_scale(deg.basis_red[a], it->second));
    }
    if (!(check == H.reduced.project(z.i, z.coords)))
        throw CheckError("cycle is outside the kernel presentation");
    for (size_t a = 0; a < deg.orders.size(); ++a) {
        if (!deg.kept[a]) continue;
        auto it = pc.find((int)a);
        RingElement v = it == pc.end() ? RingElement::zero(cx.th->R) : it->second;
        if (!deg.orders[a].is_zero() && !v.is_zero()) {
            RingElement q, r;
            v.divmod(deg.orders[a], q, r);
            v = r;
        }
        out.coords.push_back(v);
        if (deg.orders[a].is_zero()) out.free_coords.push_back(v);
    }
    return out;
}

AcyclicityReport nu_homology_acyclicity(const CubeComplex& cx) {
    if (cx.dia.empty()) throw ScopeError("acyclicity concerns nonempty diagrams");
    if (cx.th->tag != TheoryTag::U1 || !cx.th->R->base.is_field())
        throw ScopeError("nu-acyclicity runs over the u1 theory with field coefficients");
    if (cx.reduced != ReducedMode::None) throw ScopeError("nu acts on the unreduced complex");

    HomologyPresentation H = homology(cx);
    ChainOp nu = nu_hat_op(cx);
    RingElement h = cx.th->rel_h;

    AcyclicityReport rep;
    // window bounds
    int qlo = 0, qhi = 0;
    bool first = true;
    int max_tor = 1;
    for (const auto& [i, deg] : H.degrees) {
        for (size_t a = 0; a < deg.orders.size(); ++a) {
            if (!deg.kept[a]) continue;
            int q = deg.pos_q[a];
            if (first || q < qlo) qlo = q;
            if (first || q > qhi) qhi = q;
            first = false;
            if (!deg.orders[a].is_zero())
                max_tor = std::max<int>(max_tor, (int)deg.orders[a].euclidean_norm().get_si() - 1);
        }
    }
    if (first) return rep;  // zero module is acyclic
    qhi += 2 * max_tor + 4;
    qlo -= 2;

    // F-basis of homology per (i, q): (position a, power k) with h^k rep
    struct Slot {
        int pos;
        int k;
    };
    auto slots_at = [&](int i, int q) {
        std::vector<Slot> out;
        const auto& deg = H.degrees.at(i);
        for (size_t a = 0; a < deg.orders.size(); ++a) {
            if (!deg.kept[a]) continue;
            int q0 = deg.pos_q[a];
            if (q < q0 || (q - q0) % 2) continue;
            int k = (q - q0) / 2;
            // torsion of order h^e carries h^0 .. h^{e-1}
            if (!deg.orders[a].is_zero() && k >= (int)deg.orders[a].euclidean_norm().get_si() - 1)
                continue;
            out.push_back({(int)a, k});
        }
        return out;
    };

    auto nu_matrix = [&](int i, int q) {
        // matrix of nu: V_{i,q} -> V_{i,q-2} over the base field
        std::vector<Slot> src = slots_at(i, q), dst = slots_at(i, q - 2);
        std::map<std::pair<int, int>, int> dst_index;
        for (size_t b = 0; b < dst.size(); ++b) dst_index[{dst[b].pos, dst[b].k}] = (int)b;
        const GroundRing* F0 = cx.th->R;
        SparseMat m(F0, (int)dst.size(), (int)src.size());
        const auto& deg = H.degrees.at(i);
        for (size_t s = 0; s < src.size(); ++s) {
            RingElement hk = RingElement::one(F0);
            for (int t = 0; t < src[s].k; ++t) hk = hk * h;
            ChainVector z{&cx, i, sv_scale(deg.basis[src[s].pos], hk)};
            ClassCoordinates cc = class_coordinates(H, nu(z));
            int kept_idx = 0;
            for (size_t a = 0; a < deg.orders.size(); ++a) {
                if (!deg.kept[a]) continue;
                const RingElement& coeff = cc.coords[kept_idx++];
                for (const auto& [mono, c] : coeff.terms()) {
                    int kk = mono.empty() ? 0 : mono[0];
                    auto it = dst_index.find({(int)a, kk});
                    if (it == dst_index.end()) {
                        if (deg.orders[a].is_zero())
                            throw CheckError("nu lands outside the graded window");
                        continue;  // torsion truncation
                    }
                    m.add_at(it->second, (int)s, RingElement::of_scalar(F0, c));
                }
            }
        }
        return m;
    };

    auto rank_of = [&](const SparseMat& m) { return smith_normal_form(m).rank; };

    for (const auto& [i, degdata] : H.degrees) {
        bool ok = true;
        // nu^2 = 0 on homology
        for (size_t a = 0; a < degdata.orders.size(); ++a) {
            if (!degdata.kept[a]) continue;
            ChainVector z{&cx, i, degdata.basis[a]};
            ClassCoordinates n2 = class_coordinates(H, nu(nu(z)));
            for (const auto& v : n2.coords)
                if (!v.is_zero()) {
                    rep.nu_squares_to_zero = false;
                    ok = false;
                }
        }
        for (int q = qlo; q <= qhi; q += 2) {
            int dim = (int)slots_at(i, q).size();
            if (dim == 0) continue;
            int r_out = rank_of(nu_matrix(i, q));
            int r_in = rank_of(nu_matrix(i, q + 2));
            if (r_out + r_in != dim) {
                ok = false;
                rep.detail += "not exact at (i=" + std::to_string(i) + ", q=" + std::to_string(q) +
                              "): dim " + std::to_string(dim) + " = " + std::to_string(r_out) +
                              " + " + std::to_string(r_in) + " fails; ";
            }
        }
        rep.by_degree[i] = ok;
        rep.acyclic = rep.acyclic && ok;
    }
    return rep;
}

}  // namespace khx
