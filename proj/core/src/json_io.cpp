#include "msx/json_io.hpp"

#include <string>

namespace msx {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    throw std::invalid_argument("matrix JSON: expected object with \"dim\" and \"entries\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw std::invalid_argument("matrix JSON: \"dim\" must be a positive integer");
  }
  const auto dim = doc["dim"].get<std::size_t>();
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != dim * dim) {
    throw std::invalid_argument("matrix JSON: expected " + std::to_string(dim * dim) +
                                " entries");
  }
  std::vector<Complex> data;
  data.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
    }
    data.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(dim, std::move(data));
}

}  // namespace msx
