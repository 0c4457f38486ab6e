#pragma once

// Total classification of family points: positivity, PPT, the witness
// battery and the separable polygon, plus the analytic bound region on the
// boundary plane.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msx/family.hpp"
#include "msx/polygon.hpp"
#include "msx/verdict.hpp"
#include "msx/witness.hpp"

namespace msx {

/// Witness values below this count as detection.
inline constexpr double kWitnessTol = 1e-10;

/// Tangent line of C1 on the boundary plane: beta = 2(gamma - 1)/9.
double l_a(double gamma) noexcept;

/// PPT boundary on the boundary plane: beta = (-4 + 3 gamma + sqrt(4 - 3 gamma^2))/9.
/// Throws std::domain_error when 4 - 3 gamma^2 < 0.
double l_b(double gamma);

/// Verdict for the boundary-plane point alpha = 7 beta/2 + 1 - gamma from
/// the analytic description: bound strictly between l_a and l_b for
/// 0 < gamma < 1, separable inside the certified triangle, NPT from the PT
/// oracle, otherwise undetermined. gamma < 0 is handled through the swap
/// image; the triangle's gamma < 0 half only counts with `include_mirror`.
/// Throws std::invalid_argument for non-states.
Verdict boundary_plane_region(double gamma, double beta, bool include_mirror = false);

/// Same for a point given in full; throws std::invalid_argument if it is
/// off the boundary plane by more than 1e-9.
Verdict boundary_plane_region(const FamilyPoint& p, bool include_mirror = false);

struct Evidence {
  double pyramid_margin = 0.0;  // smallest eigenvalue for classify_state()
  std::optional<double> pt_min_eigenvalue;
  std::optional<std::string> witness_name;
  std::optional<double> witness_value;
  std::optional<bool> polygon_member;
  std::optional<MembershipCertificate> certificate;
};

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  Evidence evidence;
};

struct ClassifierOptions {
  /// Add swap images (gamma < 0) to the separable polygon.
  bool mirrored_polygon = false;
};

class Classifier {
 public:
  explicit Classifier(ClassifierOptions options = {});

  Classification classify(const FamilyPoint& p) const;

  /// General 9x9 density matrix: positivity from its spectrum, PPT from the
  /// PT oracle, the witness battery by trace, polygon membership only when
  /// the operator is a family member. Throws std::invalid_argument for
  /// non-Hermitian or wrongly sized input.
  Classification classify_state(const ComplexMatrix& rho) const;

  const std::vector<NamedWitness>& battery() const noexcept { return battery_; }
  const SeparablePolygon& polygon() const noexcept { return *polygon_; }
  const ClassifierOptions& options() const noexcept { return options_; }

 private:
  ClassifierOptions options_;
  std::vector<NamedWitness> battery_;
  std::shared_ptr<const SeparablePolygon> polygon_;
};

/// Process-wide classifier for the given options, built on first use.
const Classifier& default_classifier(ClassifierOptions options = {});

/// classify() with the default classifier.
Classification classify(const FamilyPoint& p);

}  // namespace msx
