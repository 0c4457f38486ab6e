#include "msx/regions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "msx/eigen.hpp"

namespace msx {

namespace {

std::vector<NamedWitness> build_battery() {
  std::vector<NamedWitness> out;
  for (PlaneName name : {PlaneName::Pl1, PlaneName::Pl2, PlaneName::Pl3})
    for (bool mirrored : {false, true}) {
      NamedWitness w = build_named_witness(name, mirrored);
      const double worst = min_product_expectation(w.candidate.matrix, 0x5eedu, 2000);
      if (worst < -kWitnessTol) {
        throw std::logic_error("witness " + w.name + " is negative on a product state (" +
                               std::to_string(worst) + ")");
      }
      out.push_back(std::move(w));
    }
  return out;
}

const std::vector<NamedWitness>& shared_battery() {
  static const std::vector<NamedWitness> battery = build_battery();
  return battery;
}

std::shared_ptr<const SeparablePolygon> shared_polygon(bool mirrored) {
  static const auto plain = std::make_shared<const SeparablePolygon>(build_polygon(false));
  if (!mirrored) return plain;
  static const auto mirror = std::make_shared<const SeparablePolygon>(build_polygon(true));
  return mirror;
}

bool in_triangle_upper_half(double gamma, double beta) {
  // gamma >= 0 part of the separable triangle: below l_a, above the facet edge
  return gamma >= 0.0 && gamma <= 1.0 && beta <= l_a(gamma) + 1e-12 &&
         beta >= (gamma - 1.0) / 3.0 - 1e-12;
}

}  // namespace

double l_a(double gamma) noexcept { return 2.0 * (gamma - 1.0) / 9.0; }

double l_b(double gamma) {
  const double disc = 4.0 - 3.0 * gamma * gamma;
  if (disc < 0.0) {
    throw std::domain_error("l_b: 4 - 3 gamma^2 < 0 at gamma = " + std::to_string(gamma));
  }
  return (-4.0 + 3.0 * gamma + std::sqrt(disc)) / 9.0;
}

Verdict boundary_plane_region(double gamma, double beta, bool include_mirror) {
  const FamilyPoint p{boundary_plane_alpha(beta, gamma), beta, gamma};
  if (!is_state(p)) {
    throw std::invalid_argument("boundary_plane_region: (gamma " + std::to_string(gamma) +
                                ", beta " + std::to_string(beta) + ") is not a state");
  }
  const bool mirrored = gamma < 0.0;
  const FamilyPoint q = mirrored ? swap_mirror(p) : p;
  // points within 1e-12 of either curve count as on it
  if (q.gamma > 0.0 && q.gamma < 1.0 && q.beta > l_a(q.gamma) + 1e-12 &&
      q.beta < l_b(q.gamma) - 1e-12) {
    return Verdict::BoundEntangled;
  }
  if (in_triangle_upper_half(q.gamma, q.beta) && (!mirrored || include_mirror)) {
    return Verdict::Separable;
  }
  if (pt_min_eigenvalue(p) < -kPptTol) return Verdict::NptEntangled;
  return Verdict::Undetermined;
}

Verdict boundary_plane_region(const FamilyPoint& p, bool include_mirror) {
  const double off = boundary_plane_offset(p);
  if (std::abs(off) > 1e-9) {
    throw std::invalid_argument("boundary_plane_region: point is off the boundary plane by " +
                                std::to_string(off));
  }
  return boundary_plane_region(p.gamma, p.beta, include_mirror);
}

Classifier::Classifier(ClassifierOptions options)
    : options_(options),
      battery_(shared_battery()),
      polygon_(shared_polygon(options.mirrored_polygon)) {}

Classification Classifier::classify(const FamilyPoint& p) const {
  Classification c;
  c.evidence.pyramid_margin = pyramid_margin(p);
  if (c.evidence.pyramid_margin < -kStateTol) {
    c.verdict = Verdict::NotAState;
    return c;
  }
  const double pt = pt_min_eigenvalue(p);
  c.evidence.pt_min_eigenvalue = pt;
  if (pt < -kPptTol) {
    c.verdict = Verdict::NptEntangled;
    return c;
  }
  for (const auto& w : battery_) {
    const double value = w.functional(p);
    if (value < -kWitnessTol && (!c.evidence.witness_value || value < *c.evidence.witness_value)) {
      c.evidence.witness_name = w.name;
      c.evidence.witness_value = value;
    }
  }
  if (c.evidence.witness_value) {
    c.verdict = Verdict::BoundEntangled;
    return c;
  }
  c.evidence.certificate = polygon_->certificate(p);
  c.evidence.polygon_member = c.evidence.certificate.has_value();
  c.verdict = *c.evidence.polygon_member ? Verdict::Separable : Verdict::Undetermined;
  return c;
}

Classification Classifier::classify_state(const ComplexMatrix& rho) const {
  if (rho.dim() != kSystemDim) {
    throw DimensionError("classify_state: expected a 9x9 density matrix, got dim " +
                         std::to_string(rho.dim()));
  }
  const double asym = max_hermitian_asymmetry(rho);
  if (asym > kInputHermitianTol) {
    throw std::invalid_argument("classify_state: input is not Hermitian (asymmetry " +
                                std::to_string(asym) + ")");
  }
  Classification c;
  // For general input the positivity margin is the smallest eigenvalue.
  const double trace_error = std::abs(trace(rho).real() - 1.0);
  c.evidence.pyramid_margin = smallest_eigenvalue(rho);
  if (trace_error > 1e-9 || c.evidence.pyramid_margin < -kStateTol) {
    c.verdict = Verdict::NotAState;
    return c;
  }
  const double pt = smallest_eigenvalue(partial_transpose(rho, kQutrit, kQutrit));
  c.evidence.pt_min_eigenvalue = pt;
  if (pt < -kPptTol) {
    c.verdict = Verdict::NptEntangled;
    return c;
  }
  for (const auto& w : battery_) {
    const double value = hs_inner(w.candidate.matrix, rho).real();
    if (value < -kWitnessTol && (!c.evidence.witness_value || value < *c.evidence.witness_value)) {
      c.evidence.witness_name = w.name;
      c.evidence.witness_value = value;
    }
  }
  if (c.evidence.witness_value) {
    c.verdict = Verdict::BoundEntangled;
    return c;
  }
  if (const auto p = family_point_from_state(rho)) {
    c.evidence.certificate = polygon_->certificate(*p);
    c.evidence.polygon_member = c.evidence.certificate.has_value();
    if (*c.evidence.polygon_member) {
      c.verdict = Verdict::Separable;
      return c;
    }
  }
  c.verdict = Verdict::Undetermined;
  return c;
}

const Classifier& default_classifier(ClassifierOptions options) {
  static const Classifier plain(ClassifierOptions{false});
  if (!options.mirrored_polygon) return plain;
  static const Classifier mirror(ClassifierOptions{true});
  return mirror;
}

Classification classify(const FamilyPoint& p) { return default_classifier().classify(p); }

}  // namespace msx
