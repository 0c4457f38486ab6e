#pragma once

// Geometric entanglement witnesses on lines toward the maximally mixed state.
//
// For a PPT start rho and 0 <= lambda <= 1:
//   rho_lambda = lambda rho + (1 - lambda) 1/D
//   C_lambda   = rho_lambda - rho - <rho_lambda, rho_lambda - rho> 1
// C_lambda vanishes on rho_lambda and is negative on rho. Whether it is a
// witness is decided with the Weyl-span criterion (lemma_feasible): an
// operator  t00 1 + sum_{(n,m) != 0} t_nm U_nm (x) U_{-n,m}  is nonnegative
// on every product state when (d-1) max |t_nm| <= t00.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msx/family.hpp"
#include "msx/qmat.hpp"
#include "msx/weyl.hpp"

namespace msx {

enum class LemmaStatus {
  Feasible,
  Infeasible,
  OutsideSpan,  // Weyl residual too large; the criterion does not apply
};

std::string_view to_string(LemmaStatus s) noexcept;

struct LemmaVerdict {
  LemmaStatus status = LemmaStatus::Infeasible;
  /// Admissible scale range [max|t_nm|, t00/(d-1)]; empty (lo > hi) unless
  /// feasible.
  std::pair<double, double> a_interval{1.0, 0.0};
  /// t00 / ((d-1) max|t_nm|); >= 1 means feasible. +inf when all t_nm vanish.
  double ratio = 0.0;

  bool feasible() const noexcept { return status == LemmaStatus::Feasible; }
};

/// Relative slack on (d-1) max|t_nm| <= t00.
inline constexpr double kLemmaRelTol = 1e-12;
/// Span residual tolerance, relative to max(1, ||C||_HS).
inline constexpr double kSpanResidualTol = 1e-10;

LemmaVerdict lemma_feasible(const WeylCoefficients& t);

struct WitnessCandidate {
  ComplexMatrix matrix{kSystemDim};
  WeylCoefficients coeffs;
  LemmaVerdict lemma;

  bool feasible() const noexcept { return lemma.feasible(); }
  const std::pair<double, double>& a_interval() const noexcept { return lemma.a_interval; }
};

/// Decomposes `c` over the qutrit Weyl tensor span and runs lemma_feasible.
WitnessCandidate make_candidate(ComplexMatrix c);

/// A line from a PPT start toward the maximally mixed state.
class LineSpec {
 public:
  /// Throws std::invalid_argument if lambda is outside [0,1] or the start is
  /// not a PPT state.
  LineSpec(FamilyPoint start, double lambda);

  const FamilyPoint& start() const noexcept { return start_; }
  double lambda() const noexcept { return lambda_; }

 private:
  FamilyPoint start_;
  double lambda_;
};

ComplexMatrix line_state(const LineSpec& line);

/// C_lambda for lambda < 1. Throws std::invalid_argument at lambda = 1
/// (use c_limit).
WitnessCandidate c_lambda(const LineSpec& line);

/// Closed form of lim_{lambda->1} C_lambda / (lambda (1 - lambda)):
/// Tr(rho^2) 1 - rho.
WitnessCandidate c_limit(const FamilyPoint& start);

struct LambdaMinResult {
  enum class Status { Found, NeverFeasible, Degenerate };

  Status status = Status::Degenerate;
  /// Feasible end of the final bisection bracket.
  double lambda = 1.0;
  /// (d-1) max|t_nm(rho)| / (Tr rho^2 - 1/D).
  double closed_form = 1.0;
  int evaluations = 0;
};

std::string_view to_string(LambdaMinResult::Status s) noexcept;

/// Smallest lambda at which C_lambda passes lemma_feasible, by bisection to
/// `tol`. Off-identity coefficients of C_lambda/(1-lambda) must stay fixed
/// and t00 must grow with lambda; a violation throws std::logic_error.
LambdaMinResult lambda_min(const FamilyPoint& start, double tol = 1e-9);

/// Tr(C rho(a,b,g)) as an affine function c0 + ca a + cb b + cg g.
struct AffineFunctional {
  double c0 = 0.0;
  double c_alpha = 0.0;
  double c_beta = 0.0;
  double c_gamma = 0.0;

  double operator()(const FamilyPoint& p) const noexcept {
    return c0 + c_alpha * p.alpha + c_beta * p.beta + c_gamma * p.gamma;
  }
};

AffineFunctional witness_functional(const ComplexMatrix& c);

/// Plane a = b_coeff * b + g_coeff * g + constant.
struct PlaneEquation {
  double b_coeff = 0.0;
  double g_coeff = 0.0;
  double constant = 0.0;

  /// a - (b_coeff b + g_coeff g + constant).
  double residual(const FamilyPoint& p) const noexcept {
    return p.alpha - (b_coeff * p.beta + g_coeff * p.gamma + constant);
  }
  /// Largest coefficient difference.
  double deviation(const PlaneEquation& other) const noexcept;
};

/// Zero set of a functional with nonzero alpha coefficient.
PlaneEquation plane_of(const AffineFunctional& f);

enum class PlaneName { Pl1, Pl2, Pl3 };

std::string_view to_string(PlaneName n) noexcept;
PlaneName plane_from_string(std::string_view s);

/// Plane coefficients as printed alongside the published witnesses.
PlaneEquation transcribed_plane(PlaneName name);

/// Starting state (eps = -1/4, gamma = 1/4) of C1.
FamilyPoint rho1_plane_start();

/// eps0 = (-25 + 7 sqrt 13)/2 with gamma on the PPT cone boundary.
FamilyPoint lambda_tot_start();

/// Closed form gamma0 = sqrt(5 + 22 eps0/3 - 5 eps0^2/3)/7 of the start
/// above; used as a cross-check of the bisection.
double lambda_tot_gamma_closed_form();

/// State at gamma = 2/7 where plane Pl1 meets the PPT cone boundary.
FamilyPoint pl3_start();

/// gamma >= 0 on the PPT cone boundary along plane_point(eps, .), by
/// bisection on the PT oracle within [lo, hi].
double ppt_boundary_gamma(double eps, double lo = 0.0, double hi = 1.0);

struct NamedWitness {
  std::string name;  // "C1", "Pl2", "Pl3"; "~" suffix for mirrored copies
  PlaneName plane_name = PlaneName::Pl1;
  bool mirrored = false;
  FamilyPoint start;
  /// lambda on the line; 1 for the limiting witness C1.
  double lambda = 1.0;
  WitnessCandidate candidate;
  AffineFunctional functional;
  PlaneEquation plane;        // constructed from the witness
  PlaneEquation transcribed;  // printed coefficients (mirrored copies: none)
  double transcription_deviation = 0.0;
};

/// Builds the witness behind Pl1 (C1), Pl2 or Pl3. Mirrored copies carry the
/// complex-conjugated Weyl coefficients, which equals conjugation by the
/// subsystem swap.
NamedWitness build_named_witness(PlaneName name, bool mirrored = false);

/// Signed residual of p against the constructed plane; negative on the side
/// of the maximally mixed state.
double plane_residual(PlaneName name, const FamilyPoint& p);

/// Haar-random product vectors |a>|b> in C^3 (x) C^3 from a seeded engine.
class ProductStateSampler {
 public:
  explicit ProductStateSampler(std::uint64_t seed) : engine_(seed) {}

  std::array<Complex, kSystemDim> next_vector();
  ComplexMatrix next_state();

 private:
  std::array<Complex, 3> unit_vector();

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// First sample of ProductStateSampler(seed) as a density matrix.
ComplexMatrix random_product_state(std::uint64_t seed);

/// min over `samples` product states of Tr(sigma C).
double min_product_expectation(const ComplexMatrix& c, std::uint64_t seed, std::size_t samples);

}  // namespace msx
