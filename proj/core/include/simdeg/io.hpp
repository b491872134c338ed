#pragma once

#include <nlohmann/json_fwd.hpp>

#include "simdeg/matrix.hpp"

namespace simdeg {

/// Matrices travel as arrays of rows, each entry a [re, im] pair.
nlohmann::json matrix_to_json(const CMatrix& m);

/// Throws std::invalid_argument on ragged rows, malformed entries or
/// non-finite values.
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace simdeg
