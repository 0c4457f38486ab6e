#include "msx/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace msx {

namespace {

constexpr double kDim = static_cast<double>(kSystemDim);

const ComplexMatrix& identity9() {
  static const ComplexMatrix id = ComplexMatrix::identity(kSystemDim);
  return id;
}

double span_norm(const WeylCoefficients& t) {
  double s = 0.0;
  for (const auto& z : t.coeffs) s += std::norm(z);
  const double d2 = static_cast<double>(t.d * t.d);
  return std::sqrt(d2 * s + t.residual * t.residual);
}

// Checks that C_lambda / (1 - lambda) has the structure that makes
// feasibility monotone in lambda: off-identity part -t(rho), identity part
// lambda (Tr rho^2 - 1/D).
void assert_line_structure(const WeylCoefficients& scaled, const WeylCoefficients& rho_coeffs,
                           double lambda, double purity_excess) {
  const double scale = std::max(rho_coeffs.max_off_identity(), 1e-300);
  for (std::size_t i = 1; i < scaled.coeffs.size(); ++i) {
    if (std::abs(scaled.coeffs[i] + rho_coeffs.coeffs[i]) > 1e-9 * scale) {
      throw std::logic_error("lambda_min: off-identity coefficients of C_lambda/(1-lambda) "
                             "depend on lambda; feasibility is not monotone");
    }
  }
  const double expected = lambda * purity_excess;
  if (std::abs(scaled.at(0, 0).real() - expected) > 1e-9 * std::max(std::abs(expected), 1e-12)) {
    throw std::logic_error("lambda_min: identity coefficient of C_lambda/(1-lambda) is not "
                           "affine increasing in lambda");
  }
}

// First PPT -> NPT transition of `path` on [lo, hi], refined by bisection.
template <class Path, class Admissible>
double first_ppt_exit(Path path, Admissible admissible, double lo, double hi, int samples) {
  double prev_t = lo;
  bool prev_ok = admissible(path(lo)) && pt_min_eigenvalue(path(lo)) >= 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    if (!admissible(path(t))) {
      prev_ok = false;
      prev_t = t;
      continue;
    }
    const bool ok = pt_min_eigenvalue(path(t)) >= 0.0;
    if (prev_ok && !ok) return bisect_ppt_boundary(path, prev_t, t);
    prev_ok = ok;
    prev_t = t;
  }
  throw std::runtime_error("no PPT boundary crossing found on the search interval");
}

}  // namespace

std::string_view to_string(LemmaStatus s) noexcept {
  switch (s) {
    case LemmaStatus::Feasible: return "feasible";
    case LemmaStatus::Infeasible: return "infeasible";
    case LemmaStatus::OutsideSpan: return "outside-span";
  }
  return "?";
}

std::string_view to_string(LambdaMinResult::Status s) noexcept {
  switch (s) {
    case LambdaMinResult::Status::Found: return "found";
    case LambdaMinResult::Status::NeverFeasible: return "never-feasible";
    case LambdaMinResult::Status::Degenerate: return "degenerate";
  }
  return "?";
}

LemmaVerdict lemma_feasible(const WeylCoefficients& t) {
  LemmaVerdict v;
  if (t.residual > kSpanResidualTol * std::max(1.0, span_norm(t))) {
    v.status = LemmaStatus::OutsideSpan;
    return v;
  }
  const double dm1 = static_cast<double>(t.d - 1);
  const Complex t00 = t.at(0, 0);
  const double off = t.max_off_identity();
  const double coeff_scale = std::max({std::abs(t00), off, 1e-300});
  if (std::abs(t00.imag()) > 1e-12 * coeff_scale || t00.real() <= 0.0) {
    v.status = LemmaStatus::Infeasible;
    v.ratio = off > 0.0 ? t00.real() / (dm1 * off) : -std::numeric_limits<double>::infinity();
    return v;
  }
  const double hi = t00.real() / dm1;
  v.ratio = off > 0.0 ? hi / off : std::numeric_limits<double>::infinity();
  if (dm1 * off <= t00.real() * (1.0 + kLemmaRelTol)) {
    v.status = LemmaStatus::Feasible;
    v.a_interval = {std::min(off, hi), hi};
  } else {
    v.status = LemmaStatus::Infeasible;
  }
  return v;
}

WitnessCandidate make_candidate(ComplexMatrix c) {
  if (c.dim() != kSystemDim) {
    throw DimensionError("make_candidate: expected a 9x9 operator, got dim " +
                         std::to_string(c.dim()));
  }
  const double asym = max_hermitian_asymmetry(c);
  if (asym > kInputHermitianTol) {
    throw std::invalid_argument("make_candidate: operator is not Hermitian (asymmetry " +
                                std::to_string(asym) + ")");
  }
  WitnessCandidate w;
  w.coeffs = weyl_tensor_decompose(c, kQutrit);
  w.lemma = lemma_feasible(w.coeffs);
  w.matrix = std::move(c);
  return w;
}

LineSpec::LineSpec(FamilyPoint start, double lambda) : start_(start), lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("LineSpec: lambda = " + std::to_string(lambda) +
                                " outside [0, 1]");
  }
  if (!is_ppt(start).ppt) {
    throw std::invalid_argument("LineSpec: start point is not PPT");
  }
}

ComplexMatrix line_state(const LineSpec& line) {
  const double lam = line.lambda();
  return Complex(lam) * family_state(line.start()) + Complex((1.0 - lam) / kDim) * identity9();
}

WitnessCandidate c_lambda(const LineSpec& line) {
  if (line.lambda() >= 1.0) {
    throw std::invalid_argument("c_lambda: lambda = 1 is the limiting case; use c_limit");
  }
  const ComplexMatrix rho = family_state(line.start());
  const ComplexMatrix rho_l = line_state(line);
  const ComplexMatrix diff = rho_l - rho;
  const double shift = hs_inner(rho_l, diff).real();
  return make_candidate(diff - Complex(shift) * identity9());
}

WitnessCandidate c_limit(const FamilyPoint& start) {
  const LineSpec check(start, 1.0);
  const ComplexMatrix rho = family_state(check.start());
  const double purity = hs_inner(rho, rho).real();
  return make_candidate(Complex(purity) * identity9() - rho);
}

LambdaMinResult lambda_min(const FamilyPoint& start, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lambda_min: tol must be > 0");
  const LineSpec endpoint(start, 1.0);

  LambdaMinResult r;
  const ComplexMatrix rho = family_state(start);
  const double purity_excess = hs_inner(rho, rho).real() - 1.0 / kDim;
  if (purity_excess <= 1e-14) {
    r.status = LambdaMinResult::Status::Degenerate;
    r.closed_form = std::numeric_limits<double>::infinity();
    return r;
  }
  const WeylCoefficients rho_coeffs = weyl_tensor_decompose(rho, kQutrit);
  r.closed_form = (kQutrit - 1) * rho_coeffs.max_off_identity() / purity_excess;

  ++r.evaluations;
  if (!c_limit(start).feasible()) {
    r.status = LambdaMinResult::Status::NeverFeasible;
    return r;
  }

  // lambda = 0 gives t00 = 0, never feasible.
  double lo = 0.0;
  double hi = 1.0;
  double max_infeasible = lo;
  double min_feasible = hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const WitnessCandidate c = c_lambda(LineSpec(start, mid));
    ++r.evaluations;

    WeylCoefficients scaled = c.coeffs;
    for (auto& z : scaled.coeffs) z /= (1.0 - mid);
    assert_line_structure(scaled, rho_coeffs, mid, purity_excess);

    if (c.feasible()) {
      hi = mid;
      min_feasible = std::min(min_feasible, mid);
    } else {
      lo = mid;
      max_infeasible = std::max(max_infeasible, mid);
    }
    if (max_infeasible >= min_feasible) {
      throw std::logic_error("lambda_min: feasibility is not monotone along the line");
    }
  }
  r.status = LambdaMinResult::Status::Found;
  r.lambda = hi;
  if (std::abs(r.lambda - r.closed_form) > 2.0 * tol + 1e-12) {
    throw std::logic_error("lambda_min: bisection " + std::to_string(r.lambda) +
                           " disagrees with closed form " + std::to_string(r.closed_form));
  }
  spdlog::debug("lambda_min at ({}, {}, {}): {} (closed form {}, {} evaluations)", start.alpha,
                start.beta, start.gamma, r.lambda, r.closed_form, r.evaluations);
  return r;
}

AffineFunctional witness_functional(const ComplexMatrix& c) {
  auto value = [&](FamilyPoint p) { return hs_inner(c, family_state(p)).real(); };
  AffineFunctional f;
  f.c0 = value({0.0, 0.0, 0.0});
  f.c_alpha = value({1.0, 0.0, 0.0}) - f.c0;
  f.c_beta = value({0.0, 1.0, 0.0}) - f.c0;
  f.c_gamma = value({0.0, 0.0, 1.0}) - f.c0;
  return f;
}

double PlaneEquation::deviation(const PlaneEquation& other) const noexcept {
  return std::max({std::abs(b_coeff - other.b_coeff), std::abs(g_coeff - other.g_coeff),
                   std::abs(constant - other.constant)});
}

PlaneEquation plane_of(const AffineFunctional& f) {
  if (std::abs(f.c_alpha) < 1e-300) {
    throw std::invalid_argument("plane_of: functional does not depend on alpha");
  }
  return {-f.c_beta / f.c_alpha, -f.c_gamma / f.c_alpha, -f.c0 / f.c_alpha};
}

std::string_view to_string(PlaneName n) noexcept {
  switch (n) {
    case PlaneName::Pl1: return "Pl1";
    case PlaneName::Pl2: return "Pl2";
    case PlaneName::Pl3: return "Pl3";
  }
  return "?";
}

PlaneName plane_from_string(std::string_view s) {
  if (s == "Pl1") return PlaneName::Pl1;
  if (s == "Pl2") return PlaneName::Pl2;
  if (s == "Pl3") return PlaneName::Pl3;
  throw std::invalid_argument("unknown plane name '" + std::string(s) + "' (Pl1|Pl2|Pl3)");
}

PlaneEquation transcribed_plane(PlaneName name) {
  const double s13 = std::sqrt(13.0);
  const double s39 = std::sqrt(39.0);
  switch (name) {
    case PlaneName::Pl1:
      return {4.0 / 5.0, -2.0 / 5.0, 2.0 / 5.0};
    case PlaneName::Pl2: {
      const double eps0 = (-25.0 + 7.0 * s13) / 2.0;
      const double den = -524.0 + 148.0 * s13;
      return {-4.0 * (-5.0 + s13) / den,
              (-94.0 + 26.0 * s13 + 3.0 * (-5.0 + s13) * std::sqrt(2.0 * eps0)) / den,
              16.0 * (-7.0 + 2.0 * s13) / den};
    }
    case PlaneName::Pl3: {
      const double den = 150.0 - 18.0 * s39;
      return {(-42.0 + 9.0 * s39) / den, -6.0 * (-5.0 + s39) / den, (24.0 - 2.0 * s39) / den};
    }
  }
  throw std::invalid_argument("transcribed_plane: unknown plane");
}

FamilyPoint rho1_plane_start() { return plane_point(-0.25, 0.25); }

double ppt_boundary_gamma(double eps, double lo, double hi) {
  return first_ppt_exit([eps](double g) { return plane_point(eps, g); },
                        [](const FamilyPoint&) { return true; }, lo, hi, 400);
}

FamilyPoint lambda_tot_start() {
  const double eps0 = (-25.0 + 7.0 * std::sqrt(13.0)) / 2.0;
  return plane_point(eps0, ppt_boundary_gamma(eps0, 0.0, 1.0));
}

double lambda_tot_gamma_closed_form() {
  const double eps0 = (-25.0 + 7.0 * std::sqrt(13.0)) / 2.0;
  return std::sqrt(5.0 + 22.0 * eps0 / 3.0 - 5.0 * eps0 * eps0 / 3.0) / 7.0;
}

FamilyPoint pl3_start() {
  const double gamma = 2.0 / 7.0;
  const PlaneEquation pl1 = transcribed_plane(PlaneName::Pl1);
  auto on_pl1 = [&](double beta) {
    return FamilyPoint{pl1.b_coeff * beta + pl1.g_coeff * gamma + pl1.constant, beta, gamma};
  };
  const double beta = first_ppt_exit(on_pl1, [](const FamilyPoint& p) { return is_state(p); },
                                     -1.0, 1.0, 2000);
  return on_pl1(beta);
}

NamedWitness build_named_witness(PlaneName name, bool mirrored) {
  NamedWitness w;
  w.plane_name = name;
  switch (name) {
    case PlaneName::Pl1:
      w.name = "C1";
      w.start = rho1_plane_start();
      w.lambda = 1.0;
      w.candidate = c_limit(w.start);
      break;
    case PlaneName::Pl2:
    case PlaneName::Pl3: {
      w.name = std::string(to_string(name));
      w.start = name == PlaneName::Pl2 ? lambda_tot_start() : pl3_start();
      const LambdaMinResult lm = lambda_min(w.start, 1e-13);
      if (lm.status != LambdaMinResult::Status::Found) {
        throw std::logic_error("build_named_witness: no feasible lambda for " + w.name);
      }
      w.lambda = lm.lambda;
      w.candidate = c_lambda(LineSpec(w.start, w.lambda));
      break;
    }
  }
  if (!w.candidate.feasible()) {
    throw std::logic_error("build_named_witness: " + w.name + " fails the Weyl-span criterion");
  }
  w.transcribed = transcribed_plane(name);
  if (mirrored) {
    w.name += "~";
    w.mirrored = true;
    w.start = swap_mirror(w.start);
    w.candidate = make_candidate(weyl_tensor_compose(w.candidate.coeffs.conjugated()));
  }
  w.functional = witness_functional(w.candidate.matrix);
  w.plane = plane_of(w.functional);
  if (w.plane.residual({0.0, 0.0, 0.0}) >= 0.0 || w.functional.c0 <= 0.0) {
    throw std::logic_error("build_named_witness: maximally mixed state is not on the "
                           "nonnegative side of " + w.name);
  }
  if (!mirrored) {
    w.transcription_deviation = w.plane.deviation(w.transcribed);
    if (w.transcription_deviation > 1e-6) {
      spdlog::debug("{}: printed plane coefficients deviate from the constructed plane by {:.3e}; "
                   "using the constructed plane", w.name, w.transcription_deviation);
    }
  }
  return w;
}

double plane_residual(PlaneName name, const FamilyPoint& p) {
  static const std::array<PlaneEquation, 3> planes = {
      build_named_witness(PlaneName::Pl1).plane, build_named_witness(PlaneName::Pl2).plane,
      build_named_witness(PlaneName::Pl3).plane};
  return planes[static_cast<std::size_t>(name)].residual(p);
}

std::array<Complex, 3> ProductStateSampler::unit_vector() {
  std::array<Complex, 3> v;
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& z : v) {
      const double re = normal_(engine_);
      const double im = normal_(engine_);
      z = {re, im};
      norm += re * re + im * im;
    }
  } while (norm < 1e-300);
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& z : v) z *= inv;
  return v;
}

std::array<Complex, kSystemDim> ProductStateSampler::next_vector() {
  const auto a = unit_vector();
  const auto b = unit_vector();
  std::array<Complex, kSystemDim> v;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) v[i * 3 + j] = a[i] * b[j];
  return v;
}

ComplexMatrix ProductStateSampler::next_state() {
  const auto v = next_vector();
  return outer_product(v);
}

ComplexMatrix random_product_state(std::uint64_t seed) {
  return ProductStateSampler(seed).next_state();
}

double min_product_expectation(const ComplexMatrix& c, std::uint64_t seed, std::size_t samples) {
  ProductStateSampler sampler(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const auto v = sampler.next_vector();
    worst = std::min(worst, expectation(c, v).real());
  }
  return worst;
}

}  // namespace msx
