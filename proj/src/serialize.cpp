#include "khx/serialize.hpp"

namespace khx {

namespace {

std::string vertex_bits(uint32_t v, int n) {
    std::string s;
    for (int b = 0; b < n; ++b) s += ((v >> b) & 1) ? '1' : '0';
    return s;
}

std::string label_str(const Labels& l) {
    std::string s;
    for (uint8_t x : l) s += "1Xab"[x];  // a, b are the two root labels
    return s;
}

nlohmann::json mat_triples(const SparseMat& m) {
    nlohmann::json entries = nlohmann::json::array();
    m.for_each([&](int i, int j, const RingElement& v) {
        entries.push_back({i, j, v.str()});
    });
    return entries;
}

}  // namespace

nlohmann::json complex_to_json(const CubeComplex& cx) {
    nlohmann::json j;
    j["schema"] = "khx.complex/1";
    j["theory"] = cx.th->name();
    j["ring"] = cx.th->R->name();
    j["pd"] = cx.dia.to_pd();
    j["reduced"] = cx.reduced == ReducedMode::None ? "none"
                   : cx.reduced == ReducedMode::Root1 ? "root1" : "root2";
    j["n_plus"] = cx.n_plus;
    j["n_minus"] = cx.n_minus;
    nlohmann::json gens = nlohmann::json::array();
    for (int i = cx.i_min; i <= cx.i_max; ++i) {
        for (const auto& g : cx.degree(i)) {
            gens.push_back({{"i", i},
                            {"q", g.q},
                            {"vertex", vertex_bits(g.vertex, cx.dia.n_crossings())},
                            {"labels", label_str(g.labels)}});
        }
    }
    j["generators"] = gens;
    nlohmann::json diffs = nlohmann::json::array();
    for (int i = cx.i_min; i < cx.i_max; ++i)
        diffs.push_back({{"i", i}, {"entries", mat_triples(cx.d(i))}});
    j["differentials"] = diffs;
    return j;
}

nlohmann::json matrix_map_to_json(const MatrixChainMap& f) {
    nlohmann::json j;
    j["schema"] = "khx.chainmap/1";
    j["dh"] = f.dh;
    j["dq"] = f.dq;
    nlohmann::json mats = nlohmann::json::array();
    for (int i = f.src->i_min; i <= f.src->i_max; ++i)
        mats.push_back({{"i", i}, {"entries", mat_triples(f.at(i))}});
    j["matrices"] = mats;
    return j;
}

nlohmann::json chain_to_json(const ChainVector& z) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [g, c] : z.coords) {
        const CubeGenerator& gen = z.cx->degree(z.i)[g];
        terms.push_back({{"vertex", vertex_bits(gen.vertex, z.cx->dia.n_crossings())},
                         {"labels", label_str(gen.labels)},
                         {"coeff", c.str()}});
    }
    return {{"i", z.i}, {"terms", terms}};
}

}  // namespace khx
