#pragma once

// JSON matrix interchange: {"dim": n, "entries": [[re, im], ...]} in
// row-major order.

#include <nlohmann/json.hpp>

#include "msx/qmat.hpp"

namespace msx {

nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Throws std::invalid_argument on malformed documents (missing keys, wrong
/// entry count, non-numeric entries).
ComplexMatrix matrix_from_json(const nlohmann::json& doc);

}  // namespace msx
