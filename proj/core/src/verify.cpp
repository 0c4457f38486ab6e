#include "msx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "msx/eigen.hpp"
#include "msx/family.hpp"
#include "msx/regions.hpp"
#include "msx/scan.hpp"
#include "msx/witness.hpp"

namespace msx {

namespace {

std::string num(double x) { return fmt::format("{:.12g}", x); }

CheckResult make(int id, std::string name, double expected, double computed, double tol,
                 bool passed) {
  return {id, std::move(name), num(expected), num(computed), num(tol), passed, false, {}};
}

double eps0() { return (-25.0 + 7.0 * std::sqrt(13.0)) / 2.0; }

FamilyPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(-0.25, 1.0), b(-0.5, 1.0), g(-1.0, 1.0);
  return {a(rng), b(rng), g(rng)};
}

FamilyPoint random_ppt_state(std::mt19937_64& rng) {
  while (true) {
    const FamilyPoint p = random_point(rng);
    if (pyramid_margin(p) > 1e-6 && pt_min_eigenvalue(p) > 1e-9) return p;
  }
}

}  // namespace

CheckResult check_lambda_tot(const VerifyOptions&) {
  const double expected = (3.0 + std::sqrt(13.0)) / 8.0;
  const FamilyPoint start = lambda_tot_start();
  const LambdaMinResult r = lambda_min(start);
  const double gamma_gap = std::abs(start.gamma - lambda_tot_gamma_closed_form());
  auto c = make(1, "lambda_min^tot = (3+sqrt13)/8", expected, r.lambda, 1e-6,
                r.status == LambdaMinResult::Status::Found &&
                    std::abs(r.lambda - expected) <= 1e-6 && gamma_gap <= 1e-9);
  c.detail = fmt::format("start eps0={:.12g} gamma0={:.12g} (closed form gap {:.2e})", eps0(),
                         start.gamma, gamma_gap);
  return c;
}

CheckResult check_pl3_lambda(const VerifyOptions&) {
  const double expected = 7.0 * (2328.0 + 331.0 * std::sqrt(39.0)) / 32763.0;
  const FamilyPoint start = pl3_start();
  const LambdaMinResult r = lambda_min(start);
  auto c = make(2, "Pl3 lambda_min = 7(2328+331 sqrt39)/32763", expected, r.lambda, 1e-5,
                r.status == LambdaMinResult::Status::Found && std::abs(r.lambda - expected) <= 1e-5);
  c.detail = fmt::format("start ({:.12g}, {:.12g}, {:.12g})", start.alpha, start.beta, start.gamma);
  return c;
}

CheckResult check_horodecki_line(const VerifyOptions&) {
  auto along = [](double g) { return horodecki_point(horodecki_b(g)); };
  const double boundary = bisect_ppt_boundary(along, 0.3, 0.6);
  bool ok = std::abs(boundary - 3.0 / 7.0) <= 1e-6;
  int bad = 0;
  const int samples = 200;
  for (int i = 0; i <= samples; ++i) {
    const double g_sep = (1.0 / 7.0 - 1e-3) * i / samples;
    if (classify(along(g_sep)).verdict != Verdict::Separable) ++bad;
    const double lo = 1.0 / 7.0 + 1e-3, hi = 3.0 / 7.0 - 1e-6;
    const double g_bound = lo + (hi - lo) * i / samples;
    if (classify(along(g_bound)).verdict != Verdict::BoundEntangled) ++bad;
  }
  ok = ok && bad == 0;
  auto c = make(3, "Horodecki line PPT/NPT transition at gamma = 3/7", 3.0 / 7.0, boundary, 1e-6, ok);
  c.detail = fmt::format("{} misclassified of {} samples on [0,1/7) and (1/7,3/7]", bad,
                         2 * (samples + 1));
  return c;
}

CheckResult check_crossings(const VerifyOptions&) {
  const double r0 = std::abs(l_a(0.0) - l_b(0.0));
  const double r1 = std::abs(l_a(1.0) - l_b(1.0));
  const double mid_gap = l_b(0.5) - l_a(0.5);
  auto c = make(4, "l_a = l_b at gamma = 0 and 1", 0.0, std::max(r0, r1), 1e-12,
                r0 <= 1e-12 && r1 <= 1e-12 && mid_gap > 0.0);
  c.detail = fmt::format("l_b - l_a at gamma = 1/2: {:.12g}", mid_gap);
  return c;
}

CheckResult check_pl1_equivalence(const VerifyOptions& opt) {
  const ComplexMatrix c1 = c_limit(rho1_plane_start()).matrix;
  std::mt19937_64 rng(opt.seed);
  std::vector<double> f, g;
  for (int i = 0; i < 100; ++i) {
    const FamilyPoint p = random_point(rng);
    f.push_back(hs_inner(c1, family_state(p)).real());
    g.push_back(p.alpha - 2.0 * (1.0 + 2.0 * p.beta - p.gamma) / 5.0);
  }
  // least-squares slope through the origin
  double fg = 0.0, gg = 0.0, fmax = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fg += f[i] * g[i];
    gg += g[i] * g[i];
    fmax = std::max(fmax, std::abs(f[i]));
  }
  const double k = fg / gg;
  double dev = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) dev = std::max(dev, std::abs(f[i] - k * g[i]));
  dev /= fmax;
  auto c = make(5, "Tr(C1 rho) proportional to a - 2(1+2b-g)/5", 0.0, dev, 1e-9,
                dev <= 1e-9 && k < 0.0);
  c.detail = fmt::format("slope {:.12g}", k);
  return c;
}

CheckResult check_witness_identities(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  double worst_zero = 0.0, worst_dist = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const FamilyPoint start = random_ppt_state(rng);
    const LineSpec line(start, lam(rng));
    const ComplexMatrix c = c_lambda(line).matrix;
    const ComplexMatrix rho_l = line_state(line);
    const ComplexMatrix rho = family_state(start);
    const double dist = frobenius_norm(rho_l - rho);
    worst_zero = std::max(worst_zero, std::abs(hs_inner(c, rho_l).real()));
    worst_dist = std::max(worst_dist, std::abs(hs_inner(c, rho).real() + dist * dist));
  }
  const double worst = std::max(worst_zero, worst_dist);
  auto c = make(6, "Tr(C rho_lambda) = 0, Tr(C rho) = -|rho_lambda - rho|^2", 0.0, worst, 1e-12,
                worst <= 1e-12);
  c.detail = fmt::format("max |Tr C rho_l| {:.2e}, max distance identity error {:.2e}", worst_zero,
                         worst_dist);
  return c;
}

CheckResult check_spectrum_pyramid(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 2);
  double worst = 0.0;
  int sign_mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    const FamilyPoint p = random_point(rng);
    const auto closed = bell_spectrum(p).sorted();
    const auto numeric = hermitian_eigenvalues(family_state(p)).eigenvalues;
    for (std::size_t k = 0; k < closed.size(); ++k)
      worst = std::max(worst, std::abs(closed[k] - numeric[k]));
    if ((pyramid_margin(p) >= 0.0) != (bell_spectrum(p).min() >= 0.0)) ++sign_mismatch;
  }
  auto c = make(7, "Bell spectrum closed form vs eigensolver", 0.0, worst, 1e-9,
                worst <= 1e-9 && sign_mismatch == 0);
  c.detail = fmt::format("{} pyramid/min-weight sign mismatches in 10^4 points", sign_mismatch);
  return c;
}

CheckResult check_limit_law(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 3);
  double worst_ratio = 0.0;
  for (int i = 0; i < 10; ++i) {
    const FamilyPoint start = random_ppt_state(rng);
    const ComplexMatrix limit = c_limit(start).matrix;
    for (int k = 3; k <= 6; ++k) {
      const double lam = 1.0 - std::pow(10.0, -k);
      ComplexMatrix scaled = c_lambda(LineSpec(start, lam)).matrix;
      scaled *= Complex(1.0 / (lam * (1.0 - lam)));
      worst_ratio = std::max(worst_ratio, frobenius_norm(scaled - limit) / (1.0 - lam));
    }
  }
  return make(8, "|C_lambda/(lambda(1-lambda)) - C1| / (1-lambda)", 10.0, worst_ratio, 10.0,
              worst_ratio <= 10.0);
}

CheckResult check_product_sampling(const VerifyOptions& opt) {
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name;
  std::uint64_t seed = opt.seed + 4;
  for (PlaneName name : {PlaneName::Pl1, PlaneName::Pl2, PlaneName::Pl3})
    for (bool mirrored : {false, true}) {
      const NamedWitness w = build_named_witness(name, mirrored);
      const double m = min_product_expectation(w.candidate.matrix, seed++, opt.product_samples);
      if (m < worst) {
        worst = m;
        worst_name = w.name;
      }
    }
  auto c = make(9, "min Tr(sigma C) over product states, six witnesses", -1e-10, worst, 1e-10,
                worst >= -1e-10);
  c.detail = fmt::format("{} samples per witness; minimum attained by {}", opt.product_samples,
                         worst_name);
  return c;
}

CheckResult check_coefficient_conjugation(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 5);
  std::uniform_real_distribution<double> eps(-0.5, 0.5), gam(0.0, 1.0), lam(0.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const double e = eps(rng), g = gam(rng);
    const FamilyPoint up = plane_point(e, g), down = plane_point(e, -g);
    // plane points sit on a positivity facet, so the margin is zero
    if (!is_state(up) || !is_state(down) || pt_min_eigenvalue(up) < 0.0 ||
        pt_min_eigenvalue(down) < 0.0)
      continue;
    const double l = lam(rng);
    const auto a = c_lambda(LineSpec(up, l)).coeffs;
    const auto b = c_lambda(LineSpec(down, l)).coeffs;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      worst = std::max(worst, std::abs(a.coeffs[i] - std::conj(b.coeffs[i])));
    ++done;
  }
  return make(10, "t_nm(eps, g) = conj t_nm(eps, -g)", 0.0, worst, 1e-12, worst <= 1e-12);
}

CheckResult check_region_scan(const VerifyOptions& opt) {
  GridSpec grid;
  grid.kind = GridSpec::Kind::BoundaryPlane;
  grid.gamma = {0.0, 1.0, 0.01};
  grid.beta = {-1.0 / 3.0, 0.1, 0.01};
  const ScanResult r = scan(grid, default_classifier(), opt.threads);
  auto count = [&](Verdict v) {
    const auto it = r.counts.find(v);
    return it == r.counts.end() ? std::size_t{0} : it->second;
  };

  const std::size_t nb = grid.beta.count();
  const std::size_t ng = grid.gamma.count();
  // Per gamma row the separable points must be exactly the grid points of
  // the triangle slice (gamma - 1)/3 <= beta <= l_a(gamma), which makes the
  // region contiguous at grid resolution.
  int above_la = 0, gaps = 0, slice_mismatch = 0, analytic_mismatch = 0;
  for (std::size_t i = 0; i < ng; ++i) {
    std::size_t first = nb, last = 0, in_row = 0, in_slice = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& row = r.rows[i * nb + j];
      const double g = row.point.gamma, b = row.point.beta;
      if (b >= (g - 1.0) / 3.0 - 1e-9 && b <= l_a(g) + 1e-9) ++in_slice;
      if (row.result.verdict != Verdict::NotAState &&
          boundary_plane_region(g, b) != row.result.verdict)
        ++analytic_mismatch;
      if (row.result.verdict != Verdict::Separable) continue;
      if (b > l_a(g) + 1e-12) ++above_la;
      first = std::min(first, j);
      last = j;
      ++in_row;
    }
    if (in_row != in_slice) ++slice_mismatch;
    if (in_row > 0 && last - first + 1 != in_row) ++gaps;
  }
  const std::size_t sep = count(Verdict::Separable), bound = count(Verdict::BoundEntangled),
                    npt = count(Verdict::NptEntangled);
  const bool ok = sep > 0 && bound > 0 && npt > 0 && above_la == 0 && gaps == 0 &&
                  slice_mismatch == 0 && analytic_mismatch == 0;
  CheckResult c{11, "boundary-plane scan: separable / bound / NPT layout", "all counts > 0",
                fmt::format("sep={} bound={} npt={} undetermined={} not-a-state={}", sep, bound, npt,
                            count(Verdict::Undetermined), count(Verdict::NotAState)),
                "exact", ok, false, {}};
  c.detail = fmt::format("{} separable above l_a, {} rows with gaps, {} rows differing from the "
                         "triangle slice, {} points differing from the analytic regions",
                         above_la, gaps, slice_mismatch, analytic_mismatch);
  return c;
}

CheckResult check_gamma_zero_slice(const VerifyOptions& opt) {
  GridSpec grid;
  grid.kind = GridSpec::Kind::Cartesian;
  grid.alpha = {-0.25, 1.0, 1.25 / 199.0};
  grid.beta = {-0.5, 1.0, 1.5 / 199.0};
  grid.gamma = {0.0, 0.0, 1.0};
  const ScanResult r = scan(grid, default_classifier(), opt.threads);
  const auto it = r.counts.find(Verdict::BoundEntangled);
  const std::size_t bound = it == r.counts.end() ? 0 : it->second;
  const auto sep = r.counts.find(Verdict::Separable);
  CheckResult c{12, "no bound entanglement at gamma = 0 (200x200)", "0", std::to_string(bound),
                "exact", bound == 0 && r.rows.size() == 40000, false, {}};
  c.detail = fmt::format("{} points, {} separable", r.rows.size(),
                         sep == r.counts.end() ? 0 : sep->second);
  return c;
}

CheckResult report_printed_gamma(const VerifyOptions&) {
  const double e = eps0();
  const double printed = std::sqrt(5.0 + 11.0 * e / 3.0 - 5.0 * e * e / 12.0) / 7.0;
  const FamilyPoint p = plane_point(e, printed);
  const LambdaMinResult r = lambda_min(p);
  CheckResult c;
  c.name = "printed gamma0 formula sqrt(5+11eps0/3-5eps0^2/12)/7";
  c.expected = num(lambda_tot_gamma_closed_form());
  c.computed = num(printed);
  c.tolerance = "n/a";
  c.passed = true;
  c.informational = true;
  c.detail = fmt::format("PT min eig there {:.3e}; lambda_min there {:.12g} ({})",
                         pt_min_eigenvalue(p), r.lambda, to_string(r.status));
  return c;
}

CheckResult report_plane_transcription(const VerifyOptions&) {
  std::string detail;
  double worst = 0.0;
  for (PlaneName name : {PlaneName::Pl1, PlaneName::Pl2, PlaneName::Pl3}) {
    const NamedWitness w = build_named_witness(name);
    worst = std::max(worst, w.transcription_deviation);
    detail += fmt::format("{}{}: b={:.12g} g={:.12g} c={:.12g} (printed deviation {:.2e})",
                          detail.empty() ? "" : "; ", to_string(name), w.plane.b_coeff,
                          w.plane.g_coeff, w.plane.constant, w.transcription_deviation);
  }
  CheckResult c;
  c.name = "constructed vs printed plane coefficients";
  c.expected = "printed";
  c.computed = "constructed";
  c.tolerance = "n/a";
  c.passed = true;
  c.informational = true;
  c.detail = detail;
  return c;
}

CheckResult report_literal_mirror(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 6);
  int states = 0, agree = 0, mirror_not_state = 0;
  while (states < 2000) {
    const FamilyPoint p = random_point(rng);
    if (!is_state(p)) continue;
    ++states;
    const FamilyPoint q = literal_gamma_mirror(p);
    if (!is_state(q)) {
      ++mirror_not_state;
      continue;
    }
    if (classify(p).verdict == classify(q).verdict) ++agree;
  }
  CheckResult c;
  c.name = "literal map (a, b, g) -> (a, b, -g) classification agreement";
  c.expected = "not asserted";
  c.computed = fmt::format("{}/{}", agree, states);
  c.tolerance = "n/a";
  c.passed = true;
  c.informational = true;
  c.detail = fmt::format("{} of {} random states map to non-states", mirror_not_state, states);
  return c;
}

CheckResult report_cone_orientation(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 7);
  int states = 0, printed = 0, corrected = 0;
  while (states < 5000) {
    const FamilyPoint p = random_point(rng);
    if (!is_state(p)) continue;
    ++states;
    const PptResult r = is_ppt(p);
    if (r.cone.printed_orientation == r.ppt) ++printed;
    if (r.cone.corrected_orientation == r.ppt) ++corrected;
  }
  CheckResult c;
  c.name = "printed PPT cone inequalities vs PT oracle";
  c.expected = fmt::format("{}/{}", states, states);
  c.computed = fmt::format("printed {}/{}, corrected {}/{}", printed, states, corrected, states);
  c.tolerance = "n/a";
  c.passed = true;
  c.informational = true;
  c.detail = "corrected: a >= -b - 1/2 + g/2 and lower <= a <= upper";
  return c;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  return {check_lambda_tot(opt),         check_pl3_lambda(opt),
          check_horodecki_line(opt),     check_crossings(opt),
          check_pl1_equivalence(opt),    check_witness_identities(opt),
          check_spectrum_pyramid(opt),   check_limit_law(opt),
          check_product_sampling(opt),   check_coefficient_conjugation(opt),
          check_region_scan(opt),        check_gamma_zero_slice(opt),
          report_printed_gamma(opt),     report_plane_transcription(opt),
          report_literal_mirror(opt),    report_cone_orientation(opt)};
}

std::string format_check(const CheckResult& r) {
  const char* tag = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
  std::string id = r.informational ? "--" : fmt::format("{:2d}", r.id);
  std::string line = fmt::format("[{}] {} {}: expected={} computed={} tol={}", tag, id, r.name,
                                 r.expected, r.computed, r.tolerance);
  if (!r.detail.empty()) line += " | " + r.detail;
  return line;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.informational || r.passed; });
}

}  // namespace msx
