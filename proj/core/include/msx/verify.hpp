#pragma once

// Replays the published numeric results and structural checks.

#include <cstdint>
#include <string>
#include <vector>

namespace msx {

struct CheckResult {
  int id = 0;  // 0 for informational lines
  std::string name;
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool passed = false;
  bool informational = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  unsigned threads = 1;
  std::size_t product_samples = 100000;
};

CheckResult check_lambda_tot(const VerifyOptions& opt);
CheckResult check_pl3_lambda(const VerifyOptions& opt);
CheckResult check_horodecki_line(const VerifyOptions& opt);
CheckResult check_crossings(const VerifyOptions& opt);
CheckResult check_pl1_equivalence(const VerifyOptions& opt);
CheckResult check_witness_identities(const VerifyOptions& opt);
CheckResult check_spectrum_pyramid(const VerifyOptions& opt);
CheckResult check_limit_law(const VerifyOptions& opt);
CheckResult check_product_sampling(const VerifyOptions& opt);
CheckResult check_coefficient_conjugation(const VerifyOptions& opt);
CheckResult check_region_scan(const VerifyOptions& opt);
CheckResult check_gamma_zero_slice(const VerifyOptions& opt);

/// Informational: the gamma formula printed next to the lambda_min^tot start.
CheckResult report_printed_gamma(const VerifyOptions& opt);
/// Informational: printed vs constructed plane coefficients.
CheckResult report_plane_transcription(const VerifyOptions& opt);
/// Informational: verdict agreement under the literal map g -> -g.
CheckResult report_literal_mirror(const VerifyOptions& opt);
/// Informational: printed vs corrected PPT cone orientation.
CheckResult report_cone_orientation(const VerifyOptions& opt);

/// All checks in order, informational lines last.
std::vector<CheckResult> run_verification(const VerifyOptions& opt = {});

/// "PASS"/"FAIL"/"INFO" line with expected, computed and tolerance.
std::string format_check(const CheckResult& r);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace msx
