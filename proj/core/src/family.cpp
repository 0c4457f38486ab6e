#include "msx/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <spdlog/spdlog.h>

#include "msx/eigen.hpp"
#include "msx/weyl.hpp"

namespace msx {

namespace {

const std::array<ComplexMatrix, 9>& bell_projectors() {
  static const std::array<ComplexMatrix, 9> projectors = [] {
    std::array<ComplexMatrix, 9> out{
        ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim),
        ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim),
        ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim), ComplexMatrix(kSystemDim)};
    for (int n = 0; n < kQutrit; ++n)
      for (int m = 0; m < kQutrit; ++m)
        out[static_cast<std::size_t>(n * kQutrit + m)] = bell_projector(WeylIndex(n, m, kQutrit));
    return out;
  }();
  return projectors;
}

const ComplexMatrix& projector(int n, int m) {
  return bell_projectors()[static_cast<std::size_t>(n * kQutrit + m)];
}

}  // namespace

double BellSpectrum::min() const { return *std::min_element(q.begin(), q.end()); }

double BellSpectrum::sum() const { return std::accumulate(q.begin(), q.end(), 0.0); }

std::array<double, 9> BellSpectrum::sorted() const {
  auto s = q;
  std::sort(s.begin(), s.end());
  return s;
}

ComplexMatrix family_state(const FamilyPoint& p) {
  const BellSpectrum spec = bell_spectrum(p);
  ComplexMatrix rho(kSystemDim);
  for (int n = 0; n < kQutrit; ++n)
    for (int m = 0; m < kQutrit; ++m) {
      const double w = spec.at(n, m);
      if (w != 0.0) rho += Complex(w) * projector(n, m);
    }
  return rho;
}

BellSpectrum bell_spectrum(const FamilyPoint& p) {
  const double w = (1.0 - p.alpha - p.beta - p.gamma) / 9.0;
  BellSpectrum s;
  for (int n = 0; n < kQutrit; ++n) {
    s.q[static_cast<std::size_t>(n * 3 + 1)] = w + p.gamma / 3.0;
    s.q[static_cast<std::size_t>(n * 3 + 2)] = w;
  }
  s.q[0] = w + p.alpha;
  s.q[3] = w + p.beta / 2.0;
  s.q[6] = w + p.beta / 2.0;
  return s;
}

std::array<double, 4> pyramid_slacks(const FamilyPoint& p) {
  const auto [a, b, g] = p;
  return {3.5 * b + 1.0 - g - a, -b + 1.0 - g - a, -b + 1.0 + 2.0 * g - a,
          a - b / 8.0 + 1.0 / 8.0 - g / 8.0};
}

double pyramid_margin(const FamilyPoint& p) {
  const auto s = pyramid_slacks(p);
  return *std::min_element(s.begin(), s.end());
}

double pt_min_eigenvalue(const FamilyPoint& p) {
  return smallest_eigenvalue(partial_transpose(family_state(p), kQutrit, kQutrit));
}

ConeDiagnostics ppt_cone_diagnostics(const FamilyPoint& p) {
  const auto [a, b, g] = p;
  ConeDiagnostics d;
  d.delta = 4.0 + 9.0 * b * b + 4.0 * g - 7.0 * g * g - 6.0 * b * (2.0 + g);
  d.linear_surface = -b - 0.5 + g / 2.0;
  if (d.delta >= 0.0) {
    const double root = 3.0 * std::sqrt(d.delta);
    d.upper_surface = (-2.0 + 11.0 * b - g + root) / 16.0;
    d.lower_surface = (-2.0 + 11.0 * b - g - root) / 16.0;
    d.printed_orientation =
        a <= d.linear_surface && a <= d.upper_surface && a <= d.lower_surface;
    constexpr double slack = 1e-12;
    d.corrected_orientation = a >= d.linear_surface - slack &&
                              a <= d.upper_surface + slack && a >= d.lower_surface - slack;
  } else {
    d.upper_surface = std::numeric_limits<double>::quiet_NaN();
    d.lower_surface = std::numeric_limits<double>::quiet_NaN();
  }
  return d;
}

PptResult is_ppt(const FamilyPoint& p) {
  const double margin = pyramid_margin(p);
  if (margin < -kStateTol) {
    throw std::invalid_argument("is_ppt: point is not a state (pyramid margin " +
                                std::to_string(margin) + ")");
  }
  PptResult r;
  r.pt_min_eigenvalue = pt_min_eigenvalue(p);
  r.ppt = r.pt_min_eigenvalue >= -kPptTol;
  r.cone = ppt_cone_diagnostics(p);
  if (r.cone.corrected_orientation != r.ppt) {
    spdlog::debug("cone/oracle disagreement at ({}, {}, {}): oracle {} (min eig {:.3e}), cone {}",
                  p.alpha, p.beta, p.gamma, r.ppt, r.pt_min_eigenvalue,
                  r.cone.corrected_orientation);
  }
  spdlog::trace("cone diagnostics ({}, {}, {}): delta={} linear={} upper={} lower={} printed={}",
                p.alpha, p.beta, p.gamma, r.cone.delta, r.cone.linear_surface,
                r.cone.upper_surface, r.cone.lower_surface, r.cone.printed_orientation);
  return r;
}

FamilyPoint horodecki_point(double b) {
  if (!(b >= 0.0 && b <= 5.0)) {
    throw std::out_of_range("horodecki_point: b = " + std::to_string(b) + " outside [0, 5]");
  }
  return {(6.0 - b) / 21.0, -2.0 * b / 21.0, (5.0 - 2.0 * b) / 7.0};
}

double horodecki_gamma(double b) noexcept { return (5.0 - 2.0 * b) / 7.0; }

double horodecki_b(double gamma) noexcept { return (5.0 - 7.0 * gamma) / 2.0; }

Verdict horodecki_classification(double b) {
  if (!(b >= 0.0 && b <= 5.0)) {
    throw std::out_of_range("horodecki_classification: b = " + std::to_string(b) +
                            " outside [0, 5]");
  }
  if (b < 1.0) return Verdict::NptEntangled;
  if (b < 2.0) return Verdict::BoundEntangled;
  if (b <= 3.0) return Verdict::Separable;
  if (b <= 4.0) return Verdict::BoundEntangled;
  return Verdict::NptEntangled;
}

FamilyPoint plane_point(double eps, double gamma) noexcept {
  return {(1.0 + gamma + eps) / 6.0, (-5.0 + 7.0 * gamma + eps) / 21.0, gamma};
}

double plane_epsilon(const FamilyPoint& p) noexcept { return 6.0 * p.alpha - 1.0 - p.gamma; }

double boundary_plane_alpha(double beta, double gamma) noexcept { return 3.5 * beta + 1.0 - gamma; }

double boundary_plane_offset(const FamilyPoint& p) noexcept {
  return p.alpha - 3.5 * p.beta - 1.0 + p.gamma;
}

FamilyPoint swap_mirror(const FamilyPoint& p) noexcept {
  return {p.alpha - p.gamma / 3.0, p.beta - 2.0 * p.gamma / 3.0, -p.gamma};
}

FamilyPoint literal_gamma_mirror(const FamilyPoint& p) noexcept {
  return {p.alpha, p.beta, -p.gamma};
}

std::optional<FamilyPoint> family_point_from_state(const ComplexMatrix& rho, double tol) {
  if (rho.dim() != kSystemDim) return std::nullopt;
  auto weight = [&](int n, int m) { return hs_inner(projector(n, m), rho).real(); };
  const double w = (weight(0, 2) + weight(1, 2) + weight(2, 2)) / 3.0;
  const double line1 = (weight(0, 1) + weight(1, 1) + weight(2, 1)) / 3.0;
  const double shift = (weight(1, 0) + weight(2, 0)) / 2.0;
  const FamilyPoint p{weight(0, 0) - w, 2.0 * (shift - w), 3.0 * (line1 - w)};
  if (frobenius_norm(rho - family_state(p)) > tol) return std::nullopt;
  return p;
}

}  // namespace msx
