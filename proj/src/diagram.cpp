#include "khx/diagram.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace khx {

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void join(int a, int b) { up[find(a)] = find(b); }
};

int parse_int(const std::string& s, size_t& i) {
    size_t j = i;
    while (j < s.size() && isdigit((unsigned char)s[j])) ++j;
    if (j == i) throw ParseError("expected arc label at position " + std::to_string(i));
    int v = std::stoi(s.substr(i, j - i));
    i = j;
    if (v <= 0) throw ParseError("arc labels must be positive");
    return v;
}

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (isspace((unsigned char)s[i]) || s[i] == ',')) ++i;
}

}  // namespace

int LinkDiagram::dart_into_slot(int s) const {
    int ai = arc_index.at(arc_at_slot(s));
    if (arc_ends[ai][1] == s) return 2 * ai;
    if (arc_ends[ai][0] == s) return 2 * ai + 1;
    throw Error("slot/arc table corrupt");
}

int LinkDiagram::dart_out_of_slot(int s) const { return dart_into_slot(s) ^ 1; }

void LinkDiagram::finalize() {
    arc_labels.clear();
    arc_index.clear();
    arc_ends.clear();
    arc_comp.clear();

    std::map<int, std::vector<int>> slots_of;  // label -> slots
    for (int c = 0; c < n_crossings(); ++c)
        for (int p = 0; p < 4; ++p) slots_of[crossings[c].arcs[p]].push_back(slot_of(c, p));
    for (const auto& [label, slots] : slots_of) {
        if (slots.size() != 2)
            throw ParseError("arc " + std::to_string(label) + " used " +
                             std::to_string(slots.size()) + " times, expected 2");
        arc_labels.push_back(label);
    }
    for (int l : loops) {
        if (slots_of.count(l)) throw ParseError("loop arc " + std::to_string(l) + " also used at a crossing");
        if (std::count(loops.begin(), loops.end(), l) != 1)
            throw ParseError("duplicate loop arc " + std::to_string(l));
    }
    for (size_t i = 0; i < arc_labels.size(); ++i) arc_index[arc_labels[i]] = (int)i;
    arc_ends.assign(arc_labels.size(), {-1, -1});
    arc_comp.assign(arc_labels.size(), -1);

    // Trace each strand component; the direction must enter every crossing's
    // position 0 (incoming under-strand), never position 2.
    auto walk = [&](int arc0, int head0, bool assign, int comp) -> int {
        int violations = 0;
        int ai = arc0, head = head0;
        do {
            if (assign) {
                const auto& ss = slots_of[arc_labels[ai]];
                arc_ends[ai] = {ss[0] == head ? ss[1] : ss[0], head};
                arc_comp[ai] = comp;
            }
            int p = slot_pos(head);
            if (p == 2) ++violations;
            int exit = slot_of(slot_crossing(head), (p + 2) % 4);
            int next_label = arc_at_slot(exit);
            int ni = arc_index[next_label];
            const auto& ns = slots_of[next_label];
            int nhead = ns[0] == exit ? ns[1] : ns[0];
            ai = ni;
            head = nhead;
        } while (!(ai == arc0 && head == head0));
        return violations;
    };

    n_components = 0;
    std::vector<char> seen(arc_labels.size(), 0);
    for (size_t a0 = 0; a0 < arc_labels.size(); ++a0) {
        if (seen[a0]) continue;
        const auto& ss = slots_of[arc_labels[a0]];
        int dir1 = walk((int)a0, ss[1], false, -1);
        int head;
        if (dir1 == 0) {
            head = ss[1];
        } else if (walk((int)a0, ss[0], false, -1) == 0) {
            head = ss[0];
        } else {
            throw ParseError("inconsistent orientation along the component of arc " +
                             std::to_string(arc_labels[a0]));
        }
        walk((int)a0, head, true, n_components);
        int ai = (int)a0;
        do {
            seen[ai] = 1;
            int exit = slot_of(slot_crossing(arc_ends[ai][1]), (slot_pos(arc_ends[ai][1]) + 2) % 4);
            ai = arc_index[arc_at_slot(exit)];
        } while (ai != (int)a0);
        ++n_components;
    }
    n_components += (int)loops.size();

    n_plus = n_minus = 0;
    for (int c = 0; c < n_crossings(); ++c) {
        int s0 = slot_of(c, 0), s1 = slot_of(c, 1), s3 = slot_of(c, 3);
        auto is_head = [&](int s) {
            int ai = arc_index[arc_at_slot(s)];
            return arc_ends[ai][1] == s;
        };
        if (!is_head(s0))
            throw ParseError("crossing " + std::to_string(c) + ": position 0 is not incoming");
        bool in1 = is_head(s1), in3 = is_head(s3);
        if (in1 == in3)
            throw ParseError("crossing " + std::to_string(c) + ": over-strand direction ambiguous");
        crossings[c].sign = in3 ? +1 : -1;
        (crossings[c].sign > 0 ? n_plus : n_minus)++;
    }

    if (basepoint) {
        bool is_loop = std::count(loops.begin(), loops.end(), *basepoint) > 0;
        if (!is_loop && !arc_index.count(*basepoint))
            throw ParseError("basepoint arc " + std::to_string(*basepoint) + " not in diagram");
    }
}

LinkDiagram parse_pd(const std::string& text) {
    LinkDiagram d;
    size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size()) throw ParseError("empty PD input");

    if (text[i] == '[') {
        // JSON array-of-4-tuples form
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad JSON PD: ") + e.what());
        }
        if (!j.is_array()) throw ParseError("JSON PD must be an array of 4-tuples");
        for (const auto& t : j) {
            if (!t.is_array() || t.size() != 4) throw ParseError("JSON PD entries are 4-tuples");
            Crossing c;
            for (int k = 0; k < 4; ++k) {
                if (!t[k].is_number_integer() || t[k].get<int>() <= 0)
                    throw ParseError("JSON PD arc labels are positive integers");
                c.arcs[k] = t[k].get<int>();
            }
            d.crossings.push_back(c);
        }
        d.finalize();
        return d;
    }

    if (text.compare(i, 3, "PD[") != 0) throw ParseError("expected PD[...] or a JSON array");
    i += 3;
    while (true) {
        skip_ws(text, i);
        if (i >= text.size()) throw ParseError("unterminated PD expression");
        if (text[i] == ']') {
            ++i;
            break;
        }
        if (text[i] == 'X') {
            ++i;
            if (i >= text.size() || text[i] != '[') throw ParseError("expected X[a,b,c,d]");
            ++i;
            Crossing c;
            for (int k = 0; k < 4; ++k) {
                skip_ws(text, i);
                c.arcs[k] = parse_int(text, i);
            }
            skip_ws(text, i);
            if (i >= text.size() || text[i] != ']') throw ParseError("expected ] after crossing");
            ++i;
            d.crossings.push_back(c);
        } else if (text[i] == 'O') {
            ++i;
            if (i >= text.size() || text[i] != '[') throw ParseError("expected O[a]");
            ++i;
            skip_ws(text, i);
            d.loops.push_back(parse_int(text, i));
            skip_ws(text, i);
            if (i >= text.size() || text[i] != ']') throw ParseError("expected ] after loop");
            ++i;
        } else {
            throw ParseError(std::string("unexpected token '") + text[i] + "' in PD");
        }
    }
    d.finalize();
    return d;
}

std::string LinkDiagram::to_pd() const {
    std::ostringstream os;
    os << "PD[";
    bool first = true;
    for (const auto& c : crossings) {
        os << (first ? "" : ",") << "X[" << c.arcs[0] << "," << c.arcs[1] << "," << c.arcs[2]
           << "," << c.arcs[3] << "]";
        first = false;
    }
    for (int l : loops) {
        os << (first ? "" : ",") << "O[" << l << "]";
        first = false;
    }
    os << "]";
    return os.str();
}

LinkDiagram mirror(const LinkDiagram& d) {
    LinkDiagram m;
    m.loops = d.loops;
    m.basepoint = d.basepoint;
    for (const auto& c : d.crossings) {
        Crossing x;
        int r = c.sign > 0 ? 3 : 1;  // start at the incoming over-strand
        for (int k = 0; k < 4; ++k) x.arcs[k] = c.arcs[(r + k) % 4];
        m.crossings.push_back(x);
    }
    m.finalize();
    return m;
}

LinkDiagram reverse(const LinkDiagram& d) {
    LinkDiagram m;
    m.loops = d.loops;
    m.basepoint = d.basepoint;
    for (const auto& c : d.crossings) {
        Crossing x;
        for (int k = 0; k < 4; ++k) x.arcs[k] = c.arcs[(2 + k) % 4];
        m.crossings.push_back(x);
    }
    m.finalize();
    return m;
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
    int off = 0;
    for (int l : a.arc_labels) off = std::max(off, l);
    for (int l : a.loops) off = std::max(off, l);
    LinkDiagram u;
    u.crossings = a.crossings;
    u.loops = a.loops;
    u.basepoint = a.basepoint;
    for (const auto& c : b.crossings) {
        Crossing x = c;
        for (auto& arc : x.arcs) arc += off;
        u.crossings.push_back(x);
    }
    for (int l : b.loops) u.loops.push_back(l + off);
    u.finalize();
    return u;
}

LinkDiagram with_basepoint(const LinkDiagram& d, int arc) {
    LinkDiagram m = d;
    m.basepoint = arc;
    m.finalize();
    return m;
}

Resolution resolve(const LinkDiagram& d, const std::vector<uint8_t>& v) {
    if ((int)v.size() != d.n_crossings()) throw Error("resolution vertex length mismatch");
    int na = d.n_arcs();
    UnionFind uf(na);
    for (int c = 0; c < d.n_crossings(); ++c) {
        const auto& a = d.crossings[c].arcs;
        auto idx = [&](int p) { return d.arc_index.at(a[p]); };
        if (v[c] == 0) {
            uf.join(idx(0), idx(1));
            uf.join(idx(2), idx(3));
        } else {
            uf.join(idx(0), idx(3));
            uf.join(idx(1), idx(2));
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < na; ++i) groups[uf.find(i)].push_back(d.arc_labels[i]);
    Resolution r;
    r.vertex = v;
    for (auto& [root, arcs] : groups) {
        std::sort(arcs.begin(), arcs.end());
        r.circles.push_back(arcs);
    }
    for (int l : d.loops) r.circles.push_back({l});
    std::sort(r.circles.begin(), r.circles.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    if (d.basepoint) {
        for (size_t i = 0; i < r.circles.size(); ++i)
            if (std::binary_search(r.circles[i].begin(), r.circles[i].end(), *d.basepoint))
                r.pointed_circle = (int)i;
        if (r.pointed_circle < 0) throw Error("basepoint arc not found in any circle");
    }
    return r;
}

std::vector<uint8_t> oriented_vertex(const LinkDiagram& d) {
    std::vector<uint8_t> v(d.n_crossings());
    for (int c = 0; c < d.n_crossings(); ++c) v[c] = d.crossings[c].sign > 0 ? 0 : 1;
    return v;
}

MapFaces map_faces(const LinkDiagram& d) {
    MapFaces f;
    int nd = 2 * d.n_arcs();
    f.face_of_dart.assign(nd, -1);
    for (int start = 0; start < nd; ++start) {
        if (f.face_of_dart[start] >= 0) continue;
        std::vector<int> orbit;
        int dart = start;
        do {
            f.face_of_dart[dart] = (int)f.face_darts.size();
            orbit.push_back(dart);
            int s = d.dart_head_slot(dart);
            int exit = slot_of(slot_crossing(s), (slot_pos(s) + 3) % 4);
            dart = d.dart_out_of_slot(exit);
        } while (dart != start);
        f.face_darts.push_back(std::move(orbit));
    }
    return f;
}

int MapFaces::face_at_corner(const LinkDiagram& d, int crossing, int k) const {
    return face_of_dart[d.dart_into_slot(slot_of(crossing, (k + 1) % 4))];
}

namespace {

// connected components of the diagram through crossings
std::vector<int> diagram_components(const LinkDiagram& d, int& count) {
    UnionFind uf(d.n_arcs());
    for (const auto& c : d.crossings) {
        int a0 = d.arc_index.at(c.arcs[0]);
        for (int p = 1; p < 4; ++p) uf.join(a0, d.arc_index.at(c.arcs[p]));
    }
    std::map<int, int> relabel;
    std::vector<int> comp(d.n_arcs());
    for (int i = 0; i < d.n_arcs(); ++i) {
        int r = uf.find(i);
        auto it = relabel.find(r);
        if (it == relabel.end()) it = relabel.emplace(r, (int)relabel.size()).first;
        comp[i] = it->second;
    }
    count = (int)relabel.size();
    return comp;
}

}  // namespace

bool planar_euler_ok(const LinkDiagram& d) {
    if (d.n_arcs() == 0) return true;
    int ncomp = 0;
    std::vector<int> comp = diagram_components(d, ncomp);
    MapFaces f = map_faces(d);
    std::vector<int> V(ncomp, 0), E(ncomp, 0), F(ncomp, 0);
    for (const auto& c : d.crossings) V[comp[d.arc_index.at(c.arcs[0])]]++;
    for (int i = 0; i < d.n_arcs(); ++i) E[comp[i]]++;
    for (const auto& orbit : f.face_darts) F[comp[orbit.front() / 2]]++;
    for (int k = 0; k < ncomp; ++k)
        if (V[k] - E[k] + F[k] != 2) return false;
    return true;
}

SeifertData seifert_data(const LinkDiagram& d) {
    if (d.empty()) throw Error("seifert data of an empty diagram");
    SeifertData out;
    std::vector<uint8_t> v = oriented_vertex(d);
    out.res = resolve(d, v);
    out.writhe = d.writhe();
    out.r = (int)out.res.circles.size();
    out.depth.assign(out.r, 0);
    out.ccw.assign(out.r, 1);
    out.comp.assign(out.r, 0);

    int ncomp = 0;
    std::vector<int> comp = d.n_arcs() ? diagram_components(d, ncomp) : std::vector<int>{};
    int loop_comp = ncomp;
    for (int ci = 0; ci < out.r; ++ci) {
        int a0 = out.res.circles[ci].front();
        bool is_loop = std::count(d.loops.begin(), d.loops.end(), a0) > 0;
        out.comp[ci] = is_loop ? loop_comp++ : comp[d.arc_index.at(a0)];
    }
    if (d.n_arcs() == 0) return out;

    if (!planar_euler_ok(d)) throw CheckError("PD rotation system is not planar");

    MapFaces f = map_faces(d);
    UnionFind regions((int)f.face_darts.size());
    for (int c = 0; c < d.n_crossings(); ++c) {
        if (v[c] == 0)
            regions.join(f.face_at_corner(d, c, 1), f.face_at_corner(d, c, 3));
        else
            regions.join(f.face_at_corner(d, c, 0), f.face_at_corner(d, c, 2));
    }

    // left/right region of each circle, traversed with its own orientation
    std::vector<int> left(out.r, -1), right(out.r, -1);
    for (int ci = 0; ci < out.r; ++ci) {
        if (out.comp[ci] >= ncomp) continue;  // loop component
        for (int a : out.res.circles[ci]) {
            int ai = d.arc_index.at(a);
            int l = regions.find(f.face_of_dart[2 * ai]);
            int rr = regions.find(f.face_of_dart[2 * ai + 1]);
            if (left[ci] < 0) {
                left[ci] = l;
                right[ci] = rr;
            } else if (left[ci] != l || right[ci] != rr) {
                throw CheckError("Seifert circle has inconsistent adjacent regions");
            }
        }
    }

    // per diagram component: region tree rooted at the outer region
    for (int k = 0; k < ncomp; ++k) {
        int min_arc_idx = -1;
        for (int i = 0; i < d.n_arcs(); ++i)
            if (comp[i] == k && (min_arc_idx < 0 || d.arc_labels[i] < d.arc_labels[min_arc_idx]))
                min_arc_idx = i;
        int outer = regions.find(f.face_of_dart[2 * min_arc_idx + 1]);  // right of the minimal arc
        std::vector<int> circ;
        for (int ci = 0; ci < out.r; ++ci)
            if (out.comp[ci] == k) circ.push_back(ci);
        // BFS over regions through circle edges
        std::map<int, int> region_depth;
        region_depth[outer] = 0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int ci : circ) {
                auto lit = region_depth.find(left[ci]);
                auto rit = region_depth.find(right[ci]);
                if ((lit == region_depth.end()) == (rit == region_depth.end())) continue;
                if (lit == region_depth.end())
                    region_depth[left[ci]] = rit->second + 1;
                else
                    region_depth[right[ci]] = lit->second + 1;
                grew = true;
            }
        }
        if (region_depth.size() != circ.size() + 1)
            throw CheckError("oriented resolution regions do not form a tree");
        for (int ci : circ) {
            auto lit = region_depth.find(left[ci]);
            auto rit = region_depth.find(right[ci]);
            out.depth[ci] = std::min(lit->second, rit->second);
            out.ccw[ci] = lit->second > rit->second ? 1 : 0;  // interior on the left
        }
    }
    return out;
}

}  // namespace khx
