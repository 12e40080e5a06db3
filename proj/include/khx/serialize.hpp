// JSON debug serialization for complexes and matrix chain maps.
// Schema "khx.complex/1": generators with bigradings and matrix triples.
#pragma once

#include "khx/chainmap.hpp"

#include "json.hpp"

namespace khx {

nlohmann::json complex_to_json(const CubeComplex& cx);
nlohmann::json matrix_map_to_json(const MatrixChainMap& f);
nlohmann::json chain_to_json(const ChainVector& z);

}  // namespace khx
