#include "cli.hpp"

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msx/family.hpp"
#include "msx/json_io.hpp"
#include "msx/log.hpp"
#include "msx/regions.hpp"
#include "msx/scan.hpp"
#include "msx/verify.hpp"
#include "msx/witness.hpp"

namespace msx::cli {

namespace {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointFlags {
  std::optional<double> alpha, beta, gamma, b, epsilon;
  std::string state_file;

  void add_to(CLI::App& app, bool allow_state) {
    app.add_option("--alpha", alpha, "alpha coordinate");
    app.add_option("--beta", beta, "beta coordinate");
    app.add_option("--gamma", gamma, "gamma coordinate (with --alpha/--beta or --epsilon)");
    app.add_option("--b", b, "Horodecki-line parameter b in [0, 5]");
    app.add_option("--epsilon", epsilon, "boundary-plane parameter eps (with --gamma)");
    if (allow_state) app.add_option("--state", state_file, "9x9 density matrix as JSON");
  }

  bool any() const { return alpha || beta || gamma || b || epsilon || !state_file.empty(); }

  /// Resolves the mutually exclusive addressing groups.
  FamilyPoint resolve() const {
    const bool cart = alpha || beta;
    const int groups = int(cart) + int(b.has_value()) + int(epsilon.has_value()) +
                       int(!state_file.empty());
    if (groups > 1) {
      throw InvalidInput("conflicting point addressing: use one of --alpha/--beta/--gamma, --b, "
                         "--epsilon/--gamma, --state");
    }
    if (b) {
      if (gamma) throw InvalidInput("--gamma cannot be combined with --b");
      return horodecki_point(*b);
    }
    if (epsilon) {
      if (!gamma) throw InvalidInput("--epsilon requires --gamma");
      return plane_point(*epsilon, *gamma);
    }
    if (!alpha || !beta || !gamma) {
      throw InvalidInput("point addressing needs --alpha, --beta and --gamma together");
    }
    return {*alpha, *beta, *gamma};
  }
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidInput("--format must be csv or json");
}

// Output sink: the caller's stream or a file opened up front.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidInput("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

nlohmann::json point_json(const FamilyPoint& p) {
  return {{"alpha", round12(p.alpha)}, {"beta", round12(p.beta)}, {"gamma", round12(p.gamma)}};
}

nlohmann::json classification_json(const std::optional<FamilyPoint>& p, const Classification& c) {
  nlohmann::json j;
  if (p) j["point"] = point_json(*p);
  j["verdict"] = std::string(to_string(c.verdict));
  auto& e = j["evidence"];
  e["pyramid_margin"] = round12(c.evidence.pyramid_margin);
  e["pt_min_eig"] = c.evidence.pt_min_eigenvalue ? nlohmann::json(round12(*c.evidence.pt_min_eigenvalue))
                                                 : nlohmann::json(nullptr);
  e["witness_name"] = c.evidence.witness_name ? nlohmann::json(*c.evidence.witness_name)
                                              : nlohmann::json(nullptr);
  e["witness_value"] = c.evidence.witness_value ? nlohmann::json(round12(*c.evidence.witness_value))
                                                : nlohmann::json(nullptr);
  e["polygon_member"] = c.evidence.polygon_member ? nlohmann::json(*c.evidence.polygon_member)
                                                  : nlohmann::json(nullptr);
  if (c.evidence.certificate) {
    nlohmann::json cert = nlohmann::json::array();
    for (std::size_t k = 0; k < 4; ++k)
      cert.push_back({{"vertex", c.evidence.certificate->vertices[k]},
                      {"weight", round12(c.evidence.certificate->weights[k])}});
    e["certificate"] = cert;
  }
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

int cmd_classify(const PointFlags& pf, bool mirror, Format fmt, const std::string& out_path,
                 std::ostream& out) {
  const Classifier& classifier = default_classifier({mirror});
  std::optional<FamilyPoint> point;
  Classification c;
  if (!pf.state_file.empty()) {
    if (pf.alpha || pf.beta || pf.gamma || pf.b || pf.epsilon) {
      throw InvalidInput("--state cannot be combined with point coordinates");
    }
    const ComplexMatrix rho = matrix_from_json(read_json_file(pf.state_file));
    c = classifier.classify_state(rho);
    point = family_point_from_state(rho);
  } else {
    point = pf.resolve();
    c = classifier.classify(*point);
  }
  Sink sink(out_path, out);
  if (fmt == Format::Json) {
    *sink << classification_json(point, c).dump(2) << '\n';
  } else {
    *sink << kScanCsvHeader << '\n';
    write_csv_row(*sink, point, c);
  }
  return kExitOk;
}

int cmd_scan(const std::string& grid, const std::string& plane_grid, unsigned threads, bool mirror,
             Format fmt, const std::string& out_path, std::ostream& out) {
  if (grid.empty() == plane_grid.empty()) {
    throw InvalidInput("scan needs exactly one of --grid and --plane-grid");
  }
  if (threads == 0) throw InvalidInput("--threads must be >= 1");
  const GridSpec spec = grid.empty() ? parse_boundary_plane_grid(plane_grid) : parse_cartesian_grid(grid);
  const Classifier& classifier = default_classifier({mirror});
  const ScanResult r = scan(spec, classifier, threads);
  Sink sink(out_path, out);
  if (fmt == Format::Json) {
    *sink << scan_summary(r, classifier).dump(2) << '\n';
  } else {
    write_scan_csv(*sink, r);
  }
  return kExitOk;
}

int cmd_lambda_min(const PointFlags& pf, const std::string& start_name, bool ppt_boundary,
                   double tol, Format fmt, const std::string& out_path, std::ostream& out) {
  FamilyPoint start;
  if (!start_name.empty()) {
    if (pf.any()) throw InvalidInput("--start cannot be combined with point coordinates");
    if (start_name == "tot") start = lambda_tot_start();
    else if (start_name == "pl3") start = pl3_start();
    else if (start_name == "rho1") start = rho1_plane_start();
    else throw InvalidInput("--start must be tot, pl3 or rho1");
  } else if (ppt_boundary) {
    if (!pf.epsilon || pf.gamma || pf.alpha || pf.beta || pf.b) {
      throw InvalidInput("--ppt-boundary takes --epsilon only (gamma is solved for)");
    }
    start = plane_point(*pf.epsilon, ppt_boundary_gamma(*pf.epsilon));
  } else {
    start = pf.resolve();
  }
  if (!is_state(start)) throw InvalidInput("start point is not a state");
  if (!is_ppt(start).ppt) throw InvalidInput("start point is not PPT");
  const LambdaMinResult r = lambda_min(start, tol);

  Sink sink(out_path, out);
  if (fmt == Format::Json) {
    nlohmann::json j{{"start", point_json(start)},
                     {"status", std::string(to_string(r.status))},
                     {"lambda_min", round12(r.lambda)},
                     {"closed_form", round12(r.closed_form)},
                     {"evaluations", r.evaluations}};
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "alpha,beta,gamma,status,lambda_min,closed_form\n"
          << format_number(start.alpha) << ',' << format_number(start.beta) << ','
          << format_number(start.gamma) << ',' << to_string(r.status) << ','
          << format_number(r.lambda) << ',' << format_number(r.closed_form) << '\n';
  }
  return kExitOk;
}

int cmd_witness_dump(const std::string& name, bool mirrored, const std::string& out_path,
                     std::ostream& out) {
  PlaneName plane;
  try {
    plane = plane_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  const NamedWitness w = build_named_witness(plane, mirrored);
  nlohmann::json j = matrix_to_json(w.candidate.matrix);
  j["name"] = w.name;
  nlohmann::json coeffs = nlohmann::json::array();
  const int d = w.candidate.coeffs.d;
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      const Complex t = w.candidate.coeffs.at(n, m);
      coeffs.push_back({n, m, round12(t.real()), round12(t.imag())});
    }
  j["weyl_coefficients"] = coeffs;
  j["plane"] = {{"a_coeff", 1.0},
                {"b_coeff", round12(w.plane.b_coeff)},
                {"g_coeff", round12(w.plane.g_coeff)},
                {"const", round12(w.plane.constant)}};
  j["start"] = point_json(w.start);
  j["lambda"] = round12(w.lambda);
  j["lemma"] = {{"status", std::string(to_string(w.candidate.lemma.status))},
                {"a_interval", {round12(w.candidate.a_interval().first),
                                round12(w.candidate.a_interval().second)}}};
  Sink sink(out_path, out);
  *sink << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_horodecki(const std::optional<double>& b, const std::string& b_grid,
                  const std::string& out_path, std::ostream& out) {
  if (b.has_value() == !b_grid.empty()) throw InvalidInput("horodecki needs exactly one of --b and --b-grid");
  std::vector<double> values;
  if (b) {
    values.push_back(*b);
  } else {
    const Axis axis = parse_axis(b_grid);
    for (std::size_t i = 0; i < axis.count(); ++i) values.push_back(axis.value(i));
  }
  for (double v : values) horodecki_point(v);  // range check before any output
  Sink sink(out_path, out);
  *sink << "alpha,beta,gamma,pyramid_margin,pt_min_eig,classification\n";
  for (double v : values) {
    const FamilyPoint p = horodecki_point(v);
    *sink << format_number(p.alpha) << ',' << format_number(p.beta) << ',' << format_number(p.gamma)
          << ',' << format_number(pyramid_margin(p)) << ',' << format_number(pt_min_eigenvalue(p))
          << ',' << to_string(horodecki_classification(v)) << '\n';
  }
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, unsigned threads, std::size_t samples, const std::string& out_path,
               std::ostream& out) {
  if (threads == 0) throw InvalidInput("--threads must be >= 1");
  VerifyOptions opt;
  opt.seed = seed;
  opt.threads = threads;
  opt.product_samples = samples;
  const auto results = run_verification(opt);
  Sink sink(out_path, out);
  for (const auto& r : results) *sink << format_check(r) << '\n';
  const bool ok = all_passed(results);
  *sink << (ok ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging_from_env();

  CLI::App app{"Classify two-qutrit Bell-state mixtures: PPT test, geometric witnesses, "
               "separable polygon"};
  app.name("msx");
  app.require_subcommand(1, 1);

  std::string out_path, format = "csv";
  auto add_io = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", out_path, "output file (default: standard output)");
    if (with_format) {
      sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
  };

  PointFlags pf;
  bool mirror_polygon = false;

  auto* classify_cmd = app.add_subcommand("classify", "classify one family point or state");
  pf.add_to(*classify_cmd, true);
  classify_cmd->add_flag("--mirror-polygon", mirror_polygon, "include gamma < 0 polygon vertices");
  add_io(classify_cmd, true);

  std::string grid, plane_grid;
  unsigned threads = 1;
  auto* scan_cmd = app.add_subcommand("scan", "classify every point of a grid");
  scan_cmd->add_option("--grid", grid, "a0:a1:step,b0:b1:step,g0:g1:step");
  scan_cmd->add_option("--plane-grid", plane_grid, "boundary plane g0:g1:step,b0:b1:step");
  scan_cmd->add_option("--threads", threads, "worker threads (>= 1)");
  scan_cmd->add_flag("--mirror-polygon", mirror_polygon, "include gamma < 0 polygon vertices");
  add_io(scan_cmd, true);

  std::string start_name;
  bool ppt_boundary = false;
  double tol = 1e-9;
  auto* lambda_cmd = app.add_subcommand("lambda-min", "smallest lambda with a certified witness");
  pf.add_to(*lambda_cmd, false);
  lambda_cmd->add_option("--start", start_name, "named start: tot, pl3 or rho1");
  lambda_cmd->add_flag("--ppt-boundary", ppt_boundary,
                       "with --epsilon: put gamma on the PPT boundary of the plane");
  lambda_cmd->add_option("--tol", tol, "bisection tolerance")->check(CLI::PositiveNumber);
  add_io(lambda_cmd, true);

  std::string witness_name;
  bool mirrored = false;
  auto* witness_cmd = app.add_subcommand("witness", "witness operators");
  witness_cmd->require_subcommand(1, 1);
  auto* dump_cmd = witness_cmd->add_subcommand("dump", "dump a named witness as JSON");
  dump_cmd->add_option("--name", witness_name, "Pl1, Pl2 or Pl3")->required();
  dump_cmd->add_flag("--mirrored", mirrored, "conjugated-coefficient partner");
  add_io(dump_cmd, false);

  std::optional<double> horodecki_b_value;
  std::string b_grid;
  auto* horodecki_cmd = app.add_subcommand("horodecki", "points on the Horodecki line");
  horodecki_cmd->add_option("--b", horodecki_b_value, "single b in [0, 5]");
  horodecki_cmd->add_option("--b-grid", b_grid, "b0:b1:step");
  add_io(horodecki_cmd, false);

  std::uint64_t seed = VerifyOptions{}.seed;
  std::size_t samples = VerifyOptions{}.product_samples;
  auto* verify_cmd = app.add_subcommand("verify", "replay the acceptance checks");
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--threads", threads, "worker threads for the scans");
  verify_cmd->add_option("--samples", samples, "product states per witness");
  add_io(verify_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "msx: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    const Format fmt = parse_format(format);
    if (*classify_cmd) return cmd_classify(pf, mirror_polygon, fmt, out_path, out);
    if (*scan_cmd) return cmd_scan(grid, plane_grid, threads, mirror_polygon, fmt, out_path, out);
    if (*lambda_cmd) return cmd_lambda_min(pf, start_name, ppt_boundary, tol, fmt, out_path, out);
    if (*dump_cmd) return cmd_witness_dump(witness_name, mirrored, out_path, out);
    if (*horodecki_cmd) return cmd_horodecki(horodecki_b_value, b_grid, out_path, out);
    if (*verify_cmd) return cmd_verify(seed, threads, samples, out_path, out);
  } catch (const InvalidInput& e) {
    err << "msx: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "msx: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "msx: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "msx: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "msx: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInvalidInput;
}

}  // namespace msx::cli
