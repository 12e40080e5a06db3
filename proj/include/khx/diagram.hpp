// Link diagrams from PD codes.
//
// A crossing X[a,b,c,d] lists arc labels counterclockwise starting at the
// incoming under-strand a (Knot Atlas convention); the under-strand runs
// a -> c. Orientations are traced from that constraint, signs derived: the
// crossing is positive when the over-strand runs d -> b. The 0-smoothing
// joins a-b and c-d, the 1-smoothing a-d and b-c, so the oriented resolution
// of a positive crossing is its 0-smoothing.
//
// Extra token O[a] encodes a crossingless unknot component with arc label a.
#pragma once

#include "khx/scalar.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace khx {

struct Crossing {
    std::array<int, 4> arcs{};  // labels, ccw from incoming under-strand
    int sign = 0;
};

// slot = 4 * crossing + position
inline int slot_of(int crossing, int pos) { return 4 * crossing + pos; }
inline int slot_crossing(int s) { return s / 4; }
inline int slot_pos(int s) { return s % 4; }

class LinkDiagram {
public:
    std::vector<Crossing> crossings;
    std::vector<int> loops;  // crossingless components
    std::optional<int> basepoint;

    // filled by finalize()
    std::vector<int> arc_labels;              // sorted labels of crossing arcs
    std::map<int, int> arc_index;             // label -> index
    std::vector<std::array<int, 2>> arc_ends; // per arc index: (tail slot, head slot)
    std::vector<int> arc_comp;                // component id per arc index
    int n_components = 0;
    int n_plus = 0, n_minus = 0;

    int n_crossings() const { return (int)crossings.size(); }
    int n_arcs() const { return (int)arc_labels.size(); }
    int writhe() const { return n_plus - n_minus; }
    bool empty() const { return crossings.empty() && loops.empty(); }

    int arc_at_slot(int s) const { return crossings[slot_crossing(s)].arcs[slot_pos(s)]; }
    // dart = 2 * arc_index + dir; dir 0 runs tail -> head (the arc orientation)
    int dart_head_slot(int dart) const { return arc_ends[dart / 2][dart % 2 ? 0 : 1]; }
    int dart_tail_slot(int dart) const { return arc_ends[dart / 2][dart % 2 ? 1 : 0]; }
    int dart_into_slot(int s) const;   // the dart whose head is s
    int dart_out_of_slot(int s) const; // the dart whose tail is s

    // Validates arcs, traces orientations and signs. Throws ParseError.
    void finalize();

    std::string to_pd() const;
};

LinkDiagram parse_pd(const std::string& text);

LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram reverse(const LinkDiagram& d);
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);
LinkDiagram with_basepoint(const LinkDiagram& d, int arc);

struct Resolution {
    std::vector<uint8_t> vertex;
    std::vector<std::vector<int>> circles;  // sorted arc labels; ordered by min arc
    int pointed_circle = -1;
};

Resolution resolve(const LinkDiagram& d, const std::vector<uint8_t>& v);
std::vector<uint8_t> oriented_vertex(const LinkDiagram& d);

// Faces of the underlying 4-valent map, traced with the face on the left of
// each dart; the orbit of a dart arriving at slot p continues out of slot
// p + 3 (mod 4). Loops are not part of the map.
struct MapFaces {
    std::vector<std::vector<int>> face_darts;  // per face, darts in orbit order
    std::vector<int> face_of_dart;             // dart -> face
    // face covering the corner between slots k and k+1 of a crossing
    int face_at_corner(const LinkDiagram& d, int crossing, int k) const;
};
MapFaces map_faces(const LinkDiagram& d);

// Euler characteristic check V - E + F = 2 per connected diagram component.
bool planar_euler_ok(const LinkDiagram& d);

struct SeifertData {
    Resolution res;
    std::vector<int> depth;     // nesting depth per circle, outermost 0
    std::vector<uint8_t> ccw;   // 1 when the circle runs counterclockwise
    std::vector<int> comp;      // diagram component of each circle
    int writhe = 0;
    int r = 0;  // number of Seifert circles
};

SeifertData seifert_data(const LinkDiagram& d);

}  // namespace khx
