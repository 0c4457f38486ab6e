#include "msx/scan.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include <fmt/format.h>

namespace msx {

namespace {

double parse_number(std::string_view text) {
  auto parse_plain = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
  };
  // "p/q" fractions are accepted so that grids can hit 1/3, 2/9, ... exactly.
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double den = parse_plain(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return parse_plain(text.substr(0, slash)) / den;
  }
  return parse_plain(text);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

std::size_t Axis::count() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument("grid axis has non-finite bounds");
  }
  if (stop < start) throw std::invalid_argument("grid axis is empty (stop < start)");
  if (!(step > 0.0)) throw std::invalid_argument("grid axis step must be > 0");
  return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

Axis parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = parse_number(parts[0]);
    return {v, v, 1.0};
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("grid axis must be 'start:stop:step', got '" + std::string(text) + "'");
  }
  Axis a{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  a.count();
  return a;
}

GridSpec parse_cartesian_grid(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw std::invalid_argument("--grid expects three axes 'alpha,beta,gamma'");
  }
  GridSpec g;
  g.kind = GridSpec::Kind::Cartesian;
  g.alpha = parse_axis(parts[0]);
  g.beta = parse_axis(parts[1]);
  g.gamma = parse_axis(parts[2]);
  return g;
}

GridSpec parse_boundary_plane_grid(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("--plane-grid expects two axes 'gamma,beta'");
  }
  GridSpec g;
  g.kind = GridSpec::Kind::BoundaryPlane;
  g.gamma = parse_axis(parts[0]);
  g.beta = parse_axis(parts[1]);
  return g;
}

std::size_t GridSpec::size() const {
  if (kind == Kind::BoundaryPlane) return gamma.count() * beta.count();
  return alpha.count() * beta.count() * gamma.count();
}

std::vector<FamilyPoint> GridSpec::points() const {
  std::vector<FamilyPoint> out;
  out.reserve(size());
  if (kind == Kind::BoundaryPlane) {
    for (std::size_t i = 0; i < gamma.count(); ++i)
      for (std::size_t j = 0; j < beta.count(); ++j) {
        const double g = gamma.value(i), b = beta.value(j);
        out.push_back({boundary_plane_alpha(b, g), b, g});
      }
  } else {
    for (std::size_t i = 0; i < alpha.count(); ++i)
      for (std::size_t j = 0; j < beta.count(); ++j)
        for (std::size_t k = 0; k < gamma.count(); ++k)
          out.push_back({alpha.value(i), beta.value(j), gamma.value(k)});
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

ScanResult scan(const GridSpec& grid, const Classifier& classifier, unsigned threads) {
  if (threads == 0) throw std::invalid_argument("scan: threads must be >= 1");
  const auto points = grid.points();
  ScanResult r;
  r.rows.resize(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      r.rows[i] = {points[i], classifier.classify(points[i])};
    }
  };
  const unsigned n = std::min<std::size_t>(threads, points.size());
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& row : r.rows) ++r.counts[row.result.verdict];
  return r;
}

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

double round12(double x) { return std::stod(format_number(x)); }

void write_csv_row(std::ostream& out, const std::optional<FamilyPoint>& point,
                   const Classification& c) {
  const auto& e = c.evidence;
  if (point) {
    out << format_number(point->alpha) << ',' << format_number(point->beta) << ','
        << format_number(point->gamma);
  } else {
    out << ",,";
  }
  out << ',' << to_string(c.verdict) << ','
      << (e.pt_min_eigenvalue ? format_number(*e.pt_min_eigenvalue) : "") << ','
      << e.witness_name.value_or("") << ','
      << (e.witness_value ? format_number(*e.witness_value) : "") << ','
      << (e.polygon_member ? (*e.polygon_member ? "true" : "false") : "") << '\n';
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  out << kScanCsvHeader << '\n';
  for (const auto& row : result.rows) write_csv_row(out, row.point, row.result);
}

nlohmann::json scan_summary(const ScanResult& result, const Classifier& classifier) {
  nlohmann::json j;
  j["points"] = result.rows.size();
  auto& counts = j["counts"];
  for (Verdict v : kAllVerdicts) {
    const auto it = result.counts.find(v);
    counts[std::string(to_string(v))] = it == result.counts.end() ? 0 : it->second;
  }

  auto& curves = j["boundary_plane_curves"];
  curves = nlohmann::json::array();
  for (int i = 0; i <= 100; ++i) {
    const double g = i / 100.0;
    curves.push_back({{"gamma", round12(g)}, {"l_a", round12(l_a(g))}, {"l_b", round12(l_b(g))}});
  }

  auto& verts = j["polygon_vertices"];
  verts = nlohmann::json::array();
  for (const auto& v : classifier.polygon().vertices()) {
    nlohmann::json sources = nlohmann::json::array();
    for (auto s : v.sources) sources.push_back(std::string(to_string(s)));
    verts.push_back({{"alpha", round12(v.point.alpha)},
                     {"beta", round12(v.point.beta)},
                     {"gamma", round12(v.point.gamma)},
                     {"sources", sources}});
  }
  return j;
}

}  // namespace msx
