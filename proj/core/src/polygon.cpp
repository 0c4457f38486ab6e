#include "msx/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

namespace msx {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 as_vec(const FamilyPoint& p) { return {p.alpha, p.beta, p.gamma}; }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

bool admissible_at_gamma0(double a, double b) {
  const FamilyPoint p{a, b, 0.0};
  return pyramid_margin(p) >= 0.0 && pt_min_eigenvalue(p) >= 0.0;
}

// a x + b y = c in the plane
struct Line2 {
  double a, b, c;
};

std::optional<std::array<double, 2>> intersect(const Line2& l, const Line2& m) {
  const double det = l.a * m.b - l.b * m.a;
  if (std::abs(det) < 1e-14) return std::nullopt;
  return std::array<double, 2>{(l.c * m.b - l.b * m.c) / det, (l.a * m.c - l.c * m.a) / det};
}

Line2 line_through(const std::array<double, 2>& p, const std::array<double, 2>& q) {
  const double a = q[1] - p[1];
  const double b = p[0] - q[0];
  return {a, b, a * p[0] + b * p[1]};
}

void add_vertex(std::vector<PolygonVertex>& out, const FamilyPoint& p, VertexSource src) {
  for (auto& v : out) {
    if (std::abs(v.point.alpha - p.alpha) < 1e-9 && std::abs(v.point.beta - p.beta) < 1e-9 &&
        std::abs(v.point.gamma - p.gamma) < 1e-9) {
      if (std::find(v.sources.begin(), v.sources.end(), src) == v.sources.end())
        v.sources.push_back(src);
      return;
    }
  }
  out.push_back({p, {src}});
}

}  // namespace

std::string_view to_string(VertexSource s) noexcept {
  switch (s) {
    case VertexSource::GammaZeroTrapezoid: return "gamma0-trapezoid";
    case VertexSource::BoundaryPlaneTriangle: return "boundary-plane-triangle";
    case VertexSource::SwapMirror: return "swap-mirror";
  }
  return "?";
}

SeparablePolygon::SeparablePolygon(std::vector<PolygonVertex> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  std::vector<Vec3> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = as_vec(vertices_[i].point);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 normal = cross(sub(v[j], v[i]), sub(v[k], v[i]));
        const double len = std::sqrt(dot(normal, normal));
        if (len < 1e-12) continue;
        for (auto& x : normal) x /= len;
        double offset = -dot(normal, v[i]);
        double lo = 0.0, hi = 0.0;
        for (const auto& x : v) {
          const double d = dot(normal, x) + offset;
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        if (lo < -1e-12 && hi > 1e-12) continue;
        if (hi <= 1e-12) {
          for (auto& x : normal) x = -x;
          offset = -offset;
        }
        const bool duplicate = std::any_of(facets_.begin(), facets_.end(), [&](const HullFacet& f) {
          return std::abs(dot(f.normal, normal) - 1.0) < 1e-12 && std::abs(f.offset - offset) < 1e-12;
        });
        if (!duplicate) facets_.push_back({normal, offset});
      }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (std::abs(det3(sub(v[b], v[a]), sub(v[c], v[a]), sub(v[d], v[a]))) > 1e-12)
            simplices_.push_back({a, b, c, d});

  if (simplices_.empty()) {
    throw std::invalid_argument("SeparablePolygon: vertices do not span three dimensions");
  }
}

std::optional<MembershipCertificate> SeparablePolygon::certificate(const FamilyPoint& p) const {
  const Vec3 x = as_vec(p);
  for (const auto& s : simplices_) {
    const Vec3 o = as_vec(vertices_[s[0]].point);
    const Vec3 e1 = sub(as_vec(vertices_[s[1]].point), o);
    const Vec3 e2 = sub(as_vec(vertices_[s[2]].point), o);
    const Vec3 e3 = sub(as_vec(vertices_[s[3]].point), o);
    const Vec3 r = sub(x, o);
    const double det = det3(e1, e2, e3);
    const double w1 = det3(r, e2, e3) / det;
    const double w2 = det3(e1, r, e3) / det;
    const double w3 = det3(e1, e2, r) / det;
    const double w0 = 1.0 - w1 - w2 - w3;
    if (std::min({w0, w1, w2, w3}) >= -kMembershipTol) {
      return MembershipCertificate{s, {w0, w1, w2, w3}};
    }
  }
  return std::nullopt;
}

double SeparablePolygon::facet_margin(const FamilyPoint& p) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) m = std::min(m, f.distance(p));
  return m;
}

std::vector<FamilyPoint> gamma_zero_trapezoid(int directions) {
  if (directions < 16) throw std::invalid_argument("gamma_zero_trapezoid: too few directions");

  std::vector<std::array<double, 2>> boundary(static_cast<std::size_t>(directions));
  for (int i = 0; i < directions; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i + 0.5) / directions;
    const double ca = std::cos(theta), sb = std::sin(theta);
    double lo = 0.0, hi = 2.0;
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      (admissible_at_gamma0(mid * ca, mid * sb) ? lo : hi) = mid;
    }
    boundary[static_cast<std::size_t>(i)] = {lo * ca, lo * sb};
  }

  // Group consecutive boundary segments of equal direction into edges.
  const std::size_t n = boundary.size();
  std::vector<double> heading(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = boundary[i];
    const auto& q = boundary[(i + 1) % n];
    heading[i] = std::atan2(q[1] - p[1], q[0] - p[0]);
  }
  auto same = [&](std::size_t i, std::size_t j) {
    return std::abs(std::remainder(heading[i] - heading[j], 2.0 * std::numbers::pi)) < 1e-7;
  };
  std::size_t first = 0;
  while (first < n && same((first + n - 1) % n, first)) ++first;
  if (first == n) throw std::logic_error("gamma_zero_trapezoid: boundary has no corners");

  std::vector<Line2> edges;
  std::size_t i = first;
  do {
    std::size_t j = i;
    while (same(j, (j + 1) % n) && (j + 1) % n != first) j = (j + 1) % n;
    // segments i..j share a direction; require two for a reliable edge
    if (j != i) edges.push_back(line_through(boundary[i], boundary[(j + 1) % n]));
    i = (j + 1) % n;
  } while (i != first);

  std::vector<FamilyPoint> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto x = intersect(edges[k], edges[(k + 1) % edges.size()]);
    if (!x) throw std::logic_error("gamma_zero_trapezoid: parallel consecutive edges");
    out.push_back({(*x)[0], (*x)[1], 0.0});
  }
  spdlog::debug("gamma = 0 PPT region: {} edges from {} probes", edges.size(), directions);
  return out;
}

std::vector<FamilyPoint> boundary_triangle(bool mirrored) {
  // (gamma, beta) coordinates on the boundary plane; each line as
  // a g + b beta <= c.
  std::vector<Line2> halfplanes = {
      {0.0, 1.0, 0.0},                // beta <= 0
      {-2.0 / 3.0, 1.0, 0.0},         // beta <= 2 gamma / 3
      {1.0 / 3.0, -1.0, 1.0 / 3.0},   // beta >= (gamma - 1)/3
      {-2.0 / 9.0, 1.0, -2.0 / 9.0},  // beta <= l_a(gamma)
  };
  if (mirrored) {
    halfplanes.push_back({-4.0 / 9.0, 1.0, -2.0 / 9.0});  // below the swap image of l_a
  } else {
    halfplanes.push_back({-1.0, 0.0, 0.0});  // gamma >= 0
  }

  std::vector<std::array<double, 2>> corners;
  for (std::size_t i = 0; i < halfplanes.size(); ++i)
    for (std::size_t j = i + 1; j < halfplanes.size(); ++j) {
      const auto x = intersect(halfplanes[i], halfplanes[j]);
      if (!x) continue;
      const bool inside = std::all_of(halfplanes.begin(), halfplanes.end(), [&](const Line2& h) {
        return h.a * (*x)[0] + h.b * (*x)[1] <= h.c + 1e-12;
      });
      const bool seen = std::any_of(corners.begin(), corners.end(), [&](const auto& c) {
        return std::abs(c[0] - (*x)[0]) < 1e-12 && std::abs(c[1] - (*x)[1]) < 1e-12;
      });
      if (inside && !seen) corners.push_back(*x);
    }

  std::vector<FamilyPoint> out;
  for (const auto& [g, b] : corners) out.push_back({boundary_plane_alpha(b, g), b, g});
  std::sort(out.begin(), out.end(), [](const FamilyPoint& a, const FamilyPoint& b) {
    return a.gamma != b.gamma ? a.gamma > b.gamma : a.beta > b.beta;
  });
  return out;
}

SeparablePolygon build_polygon(bool mirrored) {
  std::vector<PolygonVertex> vertices;
  for (const auto& p : gamma_zero_trapezoid()) add_vertex(vertices, p, VertexSource::GammaZeroTrapezoid);
  for (const auto& p : boundary_triangle(false)) add_vertex(vertices, p, VertexSource::BoundaryPlaneTriangle);
  if (mirrored) {
    const std::size_t base = vertices.size();
    for (std::size_t i = 0; i < base; ++i)
      add_vertex(vertices, swap_mirror(vertices[i].point), VertexSource::SwapMirror);
  }
  for (const auto& v : vertices) {
    if (!is_state(v.point) || pt_min_eigenvalue(v.point) < -kPptTol) {
      throw std::logic_error("build_polygon: vertex (" + std::to_string(v.point.alpha) + ", " +
                             std::to_string(v.point.beta) + ", " +
                             std::to_string(v.point.gamma) + ") is not a PPT state");
    }
  }
  return SeparablePolygon(std::move(vertices));
}

}  // namespace msx
