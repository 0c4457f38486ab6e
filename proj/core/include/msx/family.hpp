#pragma once

// The three-parameter family of two-qutrit Bell-state mixtures
//
//   rho(a,b,g) = (1-a-b-g)/9 * 1 + a P00 + b/2 (P10 + P20) + g/3 (P01 + P11 + P21)
//
// together with its positivity pyramid, the PPT oracle, the Horodecki line
// and the boundary-plane parametrisation.

#include <array>
#include <optional>

#include "msx/qmat.hpp"
#include "msx/verdict.hpp"

namespace msx {

inline constexpr int kQutrit = 3;
inline constexpr std::size_t kSystemDim = 9;

/// Slack under which a pyramid margin still counts as a state.
inline constexpr double kStateTol = 1e-12;
/// Slack under which a partial-transpose eigenvalue still counts as >= 0.
inline constexpr double kPptTol = 1e-10;

struct FamilyPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool operator==(const FamilyPoint&) const = default;
};

/// Weights q_nm of rho(a,b,g) in the Bell basis.
struct BellSpectrum {
  std::array<double, 9> q{};  // index n*3 + m

  double at(int n, int m) const { return q[static_cast<std::size_t>(n * 3 + m)]; }
  double min() const;
  double sum() const;
  std::array<double, 9> sorted() const;
};

ComplexMatrix family_state(const FamilyPoint& p);

/// Closed form: q00 = w+a, q10 = q20 = w+b/2, q_n1 = w+g/3, q_n2 = w with
/// w = (1-a-b-g)/9.
BellSpectrum bell_spectrum(const FamilyPoint& p);

/// The four positivity slacks, each >= 0 when satisfied:
///   7b/2 + 1 - g - a,  -b + 1 - g - a,  -b + 1 + 2g - a,  a - b/8 + 1/8 - g/8.
/// They are 9 q10, 9 q_n2, 9 q_n1 and 9 q00 / 8 respectively.
std::array<double, 4> pyramid_slacks(const FamilyPoint& p);

/// min of pyramid_slacks(); p is a state iff this is >= 0.
double pyramid_margin(const FamilyPoint& p);

inline bool is_state(const FamilyPoint& p) { return pyramid_margin(p) >= -kStateTol; }

/// Smallest eigenvalue of rho(p)^{T_B}. This is the authoritative PPT oracle.
double pt_min_eigenvalue(const FamilyPoint& p);

/// The three analytic PPT surfaces, for cross-reference only.
///
/// Inside the pyramid the oracle agrees with
///   a >= -b - 1/2 + g/2,  lower <= a <= upper,  Delta >= 0
/// where upper/lower = (-2 + 11b - g +- 3 sqrt(Delta))/16.
struct ConeDiagnostics {
  double delta = 0.0;
  double linear_surface = 0.0;  // -b - 1/2 + g/2
  double upper_surface = 0.0;   // NaN when delta < 0
  double lower_surface = 0.0;   // NaN when delta < 0
  bool printed_orientation = false;    // all three surfaces as "a <= ..."
  bool corrected_orientation = false;  // orientation that matches the oracle
};

ConeDiagnostics ppt_cone_diagnostics(const FamilyPoint& p);

struct PptResult {
  bool ppt = false;
  double pt_min_eigenvalue = 0.0;
  ConeDiagnostics cone;
};

/// PPT verdict from the partial-transpose spectrum. Throws
/// std::invalid_argument if p is not a state.
PptResult is_ppt(const FamilyPoint& p);

/// a = (6-b)/21, b = -2b/21, g = (5-2b)/7 for 0 <= b <= 5.
FamilyPoint horodecki_point(double b);
double horodecki_gamma(double b) noexcept;
double horodecki_b(double gamma) noexcept;

/// Paper-published labels on the Horodecki line, extended to b < 2 through
/// gamma = (5-2b)/7 and the subsystem-swap symmetry:
///   [0,1) NPT, [1,2) bound, [2,3] separable, (3,4] bound, (4,5] NPT.
Verdict horodecki_classification(double b);

/// Boundary-plane state a = (1+g+eps)/6, b = (-5+7g+eps)/21.
FamilyPoint plane_point(double eps, double gamma) noexcept;

/// Inverse of plane_point for a point on the boundary plane.
double plane_epsilon(const FamilyPoint& p) noexcept;

/// a on the boundary plane a = 7b/2 + 1 - g.
double boundary_plane_alpha(double beta, double gamma) noexcept;

/// a - 7b/2 - 1 + g; zero on the boundary plane.
double boundary_plane_offset(const FamilyPoint& p) noexcept;

/// Image under exchange of the two qutrits, F P_nm F = P_{n,-m}:
/// (a, b, g) -> (a - g/3, b - 2g/3, -g). Preserves positivity, PPT and
/// separability.
FamilyPoint swap_mirror(const FamilyPoint& p) noexcept;

/// The literal coordinate map (a, b, g) -> (a, b, -g). Not a symmetry of
/// the family off the boundary plane; kept for reporting.
FamilyPoint literal_gamma_mirror(const FamilyPoint& p) noexcept;

/// Recovers (a, b, g) from a 9x9 operator when it is a family member within
/// `tol` (Hilbert-Schmidt distance); nullopt otherwise.
std::optional<FamilyPoint> family_point_from_state(const ComplexMatrix& rho, double tol = 1e-9);

/// Bisection for the PPT/NPT transition of pt_min_eigenvalue along
/// `path(t)`, t in [lo, hi]. The endpoints must straddle the boundary.
template <class Path>
double bisect_ppt_boundary(Path&& path, double lo, double hi, double tol = 1e-15) {
  const bool lo_ppt = pt_min_eigenvalue(path(lo)) >= 0.0;
  if (lo_ppt == (pt_min_eigenvalue(path(hi)) >= 0.0)) {
    throw std::invalid_argument("bisect_ppt_boundary: endpoints do not straddle the PPT boundary");
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((pt_min_eigenvalue(path(mid)) >= 0.0) == lo_ppt) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace msx
