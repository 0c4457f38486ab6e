#pragma once

// Inner approximation of the separable set: convex hull of the gamma = 0
// PPT trapezoid and the separable triangle on the boundary plane.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "msx/family.hpp"

namespace msx {

enum class VertexSource {
  GammaZeroTrapezoid,     // extreme point of the PPT states at gamma = 0
  BoundaryPlaneTriangle,  // corner of the separable triangle on the boundary plane
  SwapMirror,             // image of a certified vertex under the subsystem swap
};

std::string_view to_string(VertexSource s) noexcept;

struct PolygonVertex {
  FamilyPoint point;
  std::vector<VertexSource> sources;
};

/// Half-space normal . p + offset >= 0, with |normal| = 1.
struct HullFacet {
  std::array<double, 3> normal{};
  double offset = 0.0;

  double distance(const FamilyPoint& p) const noexcept {
    return normal[0] * p.alpha + normal[1] * p.beta + normal[2] * p.gamma + offset;
  }
};

struct MembershipCertificate {
  std::array<std::size_t, 4> vertices{};
  std::array<double, 4> weights{};
};

/// Tolerance on barycentric weights in the membership solve.
inline constexpr double kMembershipTol = 1e-9;

class SeparablePolygon {
 public:
  /// Throws std::invalid_argument unless the vertices span three dimensions.
  explicit SeparablePolygon(std::vector<PolygonVertex> vertices);

  const std::vector<PolygonVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<HullFacet>& facets() const noexcept { return facets_; }

  /// Convex-combination certificate: four vertices and weights >= -1e-9
  /// summing to 1 that reproduce p. nullopt when p is outside.
  std::optional<MembershipCertificate> certificate(const FamilyPoint& p) const;
  bool contains(const FamilyPoint& p) const { return certificate(p).has_value(); }

  /// min over facets of the signed facet distance; >= 0 inside.
  double facet_margin(const FamilyPoint& p) const;

 private:
  std::vector<PolygonVertex> vertices_;
  std::vector<HullFacet> facets_;
  std::vector<std::array<std::size_t, 4>> simplices_;
};

/// Extreme points of {state, PPT} at gamma = 0, located by radial bisection
/// on the PT oracle and intersection of the fitted edge lines. Ordered
/// counter-clockwise in the (alpha, beta) plane.
std::vector<FamilyPoint> gamma_zero_trapezoid(int directions = 720);

/// Corners of the separable triangle on the boundary plane, as the corners
/// of the facet part below l_a (and below the mirrored l_a when `mirrored`);
/// gamma >= 0 only unless `mirrored`.
std::vector<FamilyPoint> boundary_triangle(bool mirrored = false);

/// Default polygon restricted to gamma >= 0; `mirrored` adds the swap images.
SeparablePolygon build_polygon(bool mirrored = false);

}  // namespace msx
