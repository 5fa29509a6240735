#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "scd/diagnostics.hpp"
#include "scd/json_io.hpp"
#include "scd/newton.hpp"

namespace scd::cli {

namespace {

Eigen::VectorXd parse_csv(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error("could not parse '" + item + "' as a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw Error("could not parse '" + item + "' as a number");
    vals.push_back(v);
  }
  if (vals.empty()) throw Error("empty vector argument");
  Eigen::VectorXd out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw Error("cannot write '" + output_path + "'");
  file << text << "\n";
}

FaceStrategy strategy_from_name(const std::string& name) {
  if (name == "WholeCriticalCone") return FaceStrategy::WholeCriticalCone;
  if (name == "LinealityFace") return FaceStrategy::LinealityFace;
  if (name == "LargestRegular") return FaceStrategy::LargestRegular;
  throw Error("unknown face strategy '" + name + "'");
}

GeneralizedEquation load_problem(const std::string& path, const std::string& y_override) {
  GeneralizedEquation ge = io::problem_from_json(read_file(path));
  if (y_override.empty()) return ge;
  Eigen::VectorXd y = parse_csv(y_override);
  if (y.size() != ge.dim()) throw Error("--y-target length disagrees with the problem dimension");
  return GeneralizedEquation(ge.smooth(), ge.set(), std::move(y));
}

int run_solve(const std::string& problem_path, const std::string& x0_csv,
              const std::string& y_override, double tol_residual, int max_iter,
              const std::string& strategy_name, const std::string& output_path,
              std::ostream& out) {
  const GeneralizedEquation ge = load_problem(problem_path, y_override);
  const Eigen::VectorXd x0 = parse_csv(x0_csv);
  if (x0.size() != ge.dim()) throw Error("--x0 length disagrees with the problem dimension");

  SolverOptions opts;
  opts.tol_residual = tol_residual;
  opts.max_iter = max_iter;
  opts.face_strategy = strategy_from_name(strategy_name);

  const NewtonTrace trace = solve(ge, x0, opts);
  emit(io::to_json(trace), output_path, out);
  return trace.status == SolveStatus::Converged ? 0 : 2;
}

int run_analyze(const std::string& problem_path, const std::string& x_csv,
                const std::string& v_csv, const std::string& y_override, unsigned seed,
                bool expect_certified, const std::string& output_path, std::ostream& out) {
  const GeneralizedEquation ge = load_problem(problem_path, y_override);
  const Eigen::VectorXd x = parse_csv(x_csv);
  if (x.size() != ge.dim()) throw Error("--x length disagrees with the problem dimension");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ge.dim());
  if (!v_csv.empty()) {
    v = parse_csv(v_csv);
    if (v.size() != ge.dim()) throw Error("--v length disagrees with the problem dimension");
  }

  const GraphPoint p = graph_point(ge, x, v);
  const DerivativeBundle dual = bundle_at(ge, p, BundleFlavor::Dual);
  const DerivativeBundle primal = bundle_at(ge, p, BundleFlavor::Primal);

  RegularityReport report = scd_regularity(dual);
  if (report.scd_regular) {
    // Smooth-plus-polyhedral maps carry the semismooth property, so the
    // modulus certifies strong metric subregularity at the point.
    report.lsubreg_modulus = subregularity_modulus(dual, true);
    report.semismooth_star_asserted = true;
    report.notes.push_back(
        "subregularity modulus valid: smooth plus polyhedral normal cone");
  }

  const Eigen::MatrixXd jac = ge.smooth().jacobian(x);
  const double asym = (jac - jac.transpose()).cwiseAbs().maxCoeff();
  if (asym <= 1e-9 * std::max(1.0, jac.cwiseAbs().maxCoeff())) {
    const TiltVerdict tilt = tilt_stability(primal);
    report.tilt_stable = tilt.tilt_stable;
    report.tilt_modulus = tilt.modulus;
    report.notes.push_back("tilt test: " + tilt.reason);
  } else {
    report.notes.push_back("tilt test skipped: Jacobian is not symmetric");
  }

  const double gamma = monotonicity_defect(jac);
  {
    std::ostringstream note;
    note << "certificate coordinates use hypomonotonicity parameter " << gamma;
    report.notes.push_back(note.str());
  }
  try {
    const Eigen::MatrixXd phi = hypomonotone_transform(ge.dim(), gamma);
    std::vector<Eigen::MatrixXd> family;
    family.reserve(primal.members.size());
    for (const auto& member : primal.members)
      family.push_back(phi_normalized_basis(member.subspace, phi));
    report.smr_certificate = strong_regularity_certificate(family, 10000, seed);
  } catch (const NotRegular&) {
    CertificateResult inconclusive;
    inconclusive.status = CertificateStatus::Inconclusive;
    inconclusive.method = CertificateMethod::Pairwise;
    report.smr_certificate = inconclusive;
    report.notes.push_back("certificate inconclusive: normalization failed for a member");
  }

  if (gamma == 0.0) {
    const MonotoneVerdict mono = monotone_strong_regularity(primal);
    report.notes.push_back(std::string("monotone strong regularity: ") +
                           (mono.strongly_regular ? "yes, " : "no, ") + mono.reason);
  }

  emit(io::to_json(report), output_path, out);
  if (expect_certified && report.smr_certificate &&
      report.smr_certificate->status == CertificateStatus::Refuted)
    return 3;
  return 0;
}

int run_faces(const std::string& problem_path, const std::string& x_csv,
              const std::string& v_csv, const std::string& y_override,
              const std::string& output_path, std::ostream& out) {
  const GeneralizedEquation ge = load_problem(problem_path, y_override);
  const Eigen::VectorXd x = parse_csv(x_csv);
  if (x.size() != ge.dim()) throw Error("--x length disagrees with the problem dimension");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ge.dim());
  if (!v_csv.empty()) {
    v = parse_csv(v_csv);
    if (v.size() != ge.dim()) throw Error("--v length disagrees with the problem dimension");
  }

  const PolyhedralCone crit = critical_cone(ge.set(), x, v);
  io::FacesReport report;
  report.n = ge.dim();
  report.faces = faces(crit);
  const DerivativeBundle bundle = sp_star_normal_cone(ge.set(), x, v);
  for (const auto& member : bundle.members) report.subspaces.push_back(member.subspace);

  emit(io::to_json(report), output_path, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subspace-derivative calculus for polyhedral generalized equations"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string x0_csv;
  std::string x_csv;
  std::string v_csv;
  std::string y_override;
  std::string output_path;
  std::string strategy_name = "WholeCriticalCone";
  double tol_residual = tol::residual_default;
  int max_iter = 50;
  unsigned seed = 0;
  bool expect_certified = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Run the semismooth Newton iteration");
  solve_cmd->add_option("--problem", problem_path, "Problem JSON file")->required();
  solve_cmd->add_option("--x0", x0_csv, "Start point, comma-separated")->required();
  solve_cmd->add_option("--y-target", y_override, "Override the problem's target");
  solve_cmd->add_option("--tol", tol_residual, "Residual stopping tolerance");
  solve_cmd->add_option("--max-iter", max_iter, "Iteration cap");
  solve_cmd->add_option("--face-strategy", strategy_name,
                        "WholeCriticalCone | LinealityFace | LargestRegular");
  solve_cmd->add_option("--output", output_path, "Write the trace JSON here");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Point-based regularity diagnostics");
  analyze_cmd->add_option("--problem", problem_path, "Problem JSON file")->required();
  analyze_cmd->add_option("--x", x_csv, "Point in C, comma-separated")->required();
  analyze_cmd->add_option("--v", v_csv, "Normal component at x (default 0)");
  analyze_cmd->add_option("--y-target", y_override, "Override the problem's target");
  analyze_cmd->add_option("--seed", seed, "Certificate sampling seed");
  analyze_cmd->add_flag("--expect-certified", expect_certified,
                        "Exit 3 when the certificate is refuted");
  analyze_cmd->add_option("--output", output_path, "Write the report JSON here");

  CLI::App* faces_cmd = app.add_subcommand("faces", "List the faces of the critical cone");
  faces_cmd->add_option("--problem", problem_path, "Problem JSON file")->required();
  faces_cmd->add_option("--x", x_csv, "Point in C, comma-separated")->required();
  faces_cmd->add_option("--v", v_csv, "Normal component at x (default 0)");
  faces_cmd->add_option("--y-target", y_override, "Override the problem's target");
  faces_cmd->add_option("--output", output_path, "Write the faces JSON here");

  std::vector<const char*> argv;
  argv.push_back("scd");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (solve_cmd->parsed())
      return run_solve(problem_path, x0_csv, y_override, tol_residual, max_iter, strategy_name,
                       output_path, out);
    if (analyze_cmd->parsed())
      return run_analyze(problem_path, x_csv, v_csv, y_override, seed, expect_certified,
                         output_path, out);
    return run_faces(problem_path, x_csv, v_csv, y_override, output_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace scd::cli
