#include "doctest.h"

#include "khx/diagram.hpp"

using namespace khx;

namespace {
const char* TREFOIL = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
const char* HOPF = "PD[X[2,4,1,3],X[4,2,3,1]]";
const char* FIG8 = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
}  // namespace

TEST_CASE("parse trefoil: hand-traced orientation and signs") {
    LinkDiagram d = parse_pd(TREFOIL);
    CHECK(d.n_crossings() == 3);
    CHECK(d.n_components == 1);
    CHECK(d.writhe() == -3);
    CHECK(d.n_minus == 3);
}

TEST_CASE("parse Hopf: positive Hopf link") {
    LinkDiagram d = parse_pd(HOPF);
    CHECK(d.n_crossings() == 2);
    CHECK(d.n_components == 2);
    CHECK(d.writhe() == 2);
}

TEST_CASE("parse figure-eight") {
    LinkDiagram d = parse_pd(FIG8);
    CHECK(d.n_components == 1);
    CHECK(d.writhe() == 0);
}

TEST_CASE("json form parses to the same diagram") {
    LinkDiagram d = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]");
    CHECK(d.writhe() == -3);
    CHECK(d.to_pd() == std::string(TREFOIL));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_pd(""), ParseError);
    CHECK_THROWS_AS(parse_pd("PD[X[1,2,3]]"), ParseError);
    CHECK_THROWS_AS(parse_pd("PD[X[1,1,1,2]]"), ParseError);                // arc used 3 times
    CHECK_THROWS_AS(parse_pd("PD[X[1,4,2,5],X[3,6,4,1]]"), ParseError);    // arcs used once
    // arc 1 would leave through the under-out position at both its ends
    CHECK_THROWS_AS(parse_pd("PD[X[2,4,1,5],X[2,5,1,4]]"), ParseError);
    CHECK_THROWS_AS(parse_pd("garbage"), ParseError);
}

TEST_CASE("unknot kinks") {
    LinkDiagram pos = parse_pd("PD[X[1,1,2,2]]");
    CHECK(pos.writhe() == 1);
    CHECK(pos.n_components == 1);
    LinkDiagram neg = parse_pd("PD[X[1,2,2,1]]");
    CHECK(neg.writhe() == -1);
}

TEST_CASE("loops and empty unknot diagrams") {
    LinkDiagram d = parse_pd("PD[O[1]]");
    CHECK(d.n_components == 1);
    CHECK(d.n_crossings() == 0);
    Resolution r = resolve(d, {});
    CHECK(r.circles.size() == 1);
    SeifertData s = seifert_data(d);
    CHECK(s.r == 1);
    CHECK(s.depth[0] == 0);
    CHECK(s.writhe == 0);
}

TEST_CASE("trefoil resolutions") {
    LinkDiagram d = parse_pd(TREFOIL);
    // oriented (all-1 here, writhe -3) resolution has the 2 Seifert circles
    Resolution seif = resolve(d, oriented_vertex(d));
    REQUIRE(seif.circles.size() == 2);
    CHECK(seif.circles[0] == std::vector<int>{1, 3, 5});
    CHECK(seif.circles[1] == std::vector<int>{2, 4, 6});
    // all-0 resolution has 3 circles
    Resolution r0 = resolve(d, {0, 0, 0});
    CHECK(r0.circles.size() == 3);
}

TEST_CASE("circle counts of adjacent vertices differ by one") {
    for (const char* pd : {TREFOIL, HOPF, FIG8}) {
        LinkDiagram d = parse_pd(pd);
        int n = d.n_crossings();
        for (int v = 0; v < (1 << n); ++v) {
            std::vector<uint8_t> vert(n);
            for (int c = 0; c < n; ++c) vert[c] = (v >> c) & 1;
            int base = (int)resolve(d, vert).circles.size();
            for (int c = 0; c < n; ++c) {
                if (vert[c]) continue;
                std::vector<uint8_t> w = vert;
                w[c] = 1;
                int other = (int)resolve(d, w).circles.size();
                CHECK(std::abs(base - other) == 1);
            }
        }
    }
}

TEST_CASE("planarity check via Euler characteristic") {
    for (const char* pd : {TREFOIL, HOPF, FIG8, "PD[X[1,1,2,2]]"}) {
        CHECK(planar_euler_ok(parse_pd(pd)));
    }
}

// Circles adjacent at a crossing of the oriented resolution must have
// opposite labeling parity (depth + winding indicator); this is what makes
// the Lee chain a cycle.
static void check_adjacent_parity(const char* pd) {
    LinkDiagram d = parse_pd(pd);
    SeifertData s = seifert_data(d);
    auto circle_of = [&](int arc) {
        for (size_t i = 0; i < s.res.circles.size(); ++i)
            if (std::binary_search(s.res.circles[i].begin(), s.res.circles[i].end(), arc))
                return (int)i;
        return -1;
    };
    auto parity = [&](int ci) { return (s.depth[ci] + (s.ccw[ci] ? 0 : 1)) % 2; };
    for (const auto& c : d.crossings) {
        // the two strands of the oriented smoothing: (a,b),(c,d) or (a,d),(b,c)
        int ca, cb;
        if (c.sign > 0) {
            ca = circle_of(c.arcs[0]);
            cb = circle_of(c.arcs[2]);
        } else {
            ca = circle_of(c.arcs[0]);
            cb = circle_of(c.arcs[1]);
        }
        REQUIRE(ca >= 0);
        REQUIRE(cb >= 0);
        if (ca != cb) CHECK(parity(ca) != parity(cb));
    }
    // at least one outermost circle per component
    CHECK(*std::min_element(s.depth.begin(), s.depth.end()) == 0);
}

TEST_CASE("seifert data: trefoil, Hopf, figure-eight") {
    SeifertData t = seifert_data(parse_pd(TREFOIL));
    CHECK(t.r == 2);
    CHECK(t.writhe == -3);
    SeifertData h = seifert_data(parse_pd(HOPF));
    CHECK(h.r == 2);
    CHECK(h.writhe == 2);
    SeifertData f8 = seifert_data(parse_pd(FIG8));
    CHECK(f8.writhe == 0);
    CHECK(f8.r == 3);
    for (const char* pd : {TREFOIL, HOPF, FIG8}) check_adjacent_parity(pd);
}

TEST_CASE("mirror and reverse") {
    LinkDiagram t = parse_pd(TREFOIL);
    LinkDiagram m = mirror(t);
    CHECK(m.writhe() == 3);
    CHECK(mirror(m).to_pd() == t.to_pd());
    LinkDiagram r = reverse(parse_pd(HOPF));
    CHECK(r.writhe() == 2);
    CHECK(reverse(reverse(parse_pd(TREFOIL))).to_pd() == t.to_pd());
}

TEST_CASE("disjoint union") {
    LinkDiagram u = disjoint_union(parse_pd(TREFOIL), parse_pd(HOPF));
    CHECK(u.n_components == 3);
    CHECK(u.writhe() == -1);
    CHECK(u.n_crossings() == 5);
    SeifertData s = seifert_data(u);
    CHECK(s.r == 4);
    // no nesting across components: Hopf circles keep depths 0 and 1
    CHECK(planar_euler_ok(u));
}

TEST_CASE("basepoint handling") {
    LinkDiagram d = with_basepoint(parse_pd(TREFOIL), 1);
    Resolution r = resolve(d, oriented_vertex(d));
    CHECK(r.pointed_circle == 0);  // circle {1,3,5}
    CHECK_THROWS_AS(with_basepoint(parse_pd(TREFOIL), 99), ParseError);
}
