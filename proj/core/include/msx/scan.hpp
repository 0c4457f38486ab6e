#pragma once

// Grid scans over the family with deterministic, parallel evaluation.

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "msx/regions.hpp"

namespace msx {

/// Values start, start + step, ... up to stop (inclusive within 1e-9 step).
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// Throws std::invalid_argument for non-finite bounds, stop < start or
  /// step <= 0.
  std::size_t count() const;
  double value(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
};

/// "a0:a1:step" or a single value "a0".
Axis parse_axis(std::string_view text);

struct GridSpec {
  enum class Kind {
    Cartesian,      // alpha x beta x gamma, alpha outermost
    BoundaryPlane,  // gamma x beta with alpha = 7 beta/2 + 1 - gamma, gamma outermost
  };

  Kind kind = Kind::Cartesian;
  Axis alpha;  // unused for BoundaryPlane
  Axis beta;
  Axis gamma;

  std::size_t size() const;
  /// Row-major point list; throws std::invalid_argument for an empty grid.
  std::vector<FamilyPoint> points() const;
};

/// "a0:a1:s,b0:b1:s,g0:g1:s".
GridSpec parse_cartesian_grid(std::string_view text);
/// "g0:g1:s,b0:b1:s".
GridSpec parse_boundary_plane_grid(std::string_view text);

struct ScanRow {
  FamilyPoint point;
  Classification result;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::map<Verdict, std::size_t> counts;
};

/// Classifies every grid point using `threads` workers; rows keep grid order.
ScanResult scan(const GridSpec& grid, const Classifier& classifier, unsigned threads = 1);

inline constexpr std::string_view kScanCsvHeader =
    "alpha,beta,gamma,verdict,pt_min_eig,witness_name,witness_value,polygon_member";

/// Header plus one row per point; numbers with 12 significant digits,
/// missing evidence as empty fields.
void write_scan_csv(std::ostream& out, const ScanResult& result);

/// One CSV row in the scan schema; empty coordinates when `point` is unset.
void write_csv_row(std::ostream& out, const std::optional<FamilyPoint>& point,
                   const Classification& c);

/// Verdict counts, sampled l_a / l_b curves and the polygon vertices.
nlohmann::json scan_summary(const ScanResult& result, const Classifier& classifier);

/// 12 significant digits, the output format of every numeric field.
std::string format_number(double x);

/// x rounded to 12 significant digits, for JSON output.
double round12(double x);

}  // namespace msx
