#include "scd/json_io.hpp"

#include <json.hpp>

namespace scd::io {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vec_from_json(const json& j) {
  if (!j.is_array()) throw JsonError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) {
    if (!e.is_number()) throw JsonError("expected an array of numbers");
    v(i++) = e.get<double>();
  }
  return v;
}

json rows_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i).transpose()));
  return out;
}

Eigen::MatrixXd rows_from_json(const json& j, Eigen::Index cols_hint) {
  if (!j.is_array()) throw JsonError("expected an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows == 0 ? cols_hint : 0);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::VectorXd row = vec_from_json(j[static_cast<size_t>(i)]);
    if (i == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) throw JsonError("ragged matrix rows");
    m.row(i) = row.transpose();
  }
  return m;
}

json cols_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_to_json(m.col(c)));
  return out;
}

Eigen::MatrixXd cols_from_json(const json& j, Eigen::Index rows) {
  if (!j.is_array()) throw JsonError("expected an array of columns");
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Eigen::VectorXd col = vec_from_json(j[static_cast<size_t>(c)]);
    if (col.size() != rows) throw JsonError("column length disagrees with dimension");
    m.col(c) = col;
  }
  return m;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw JsonError("malformed JSON");
  return j;
}

json subspace_to_obj(const Subspace& l) {
  json j;
  j["n"] = l.n();
  json basis = json::array();
  const Eigen::MatrixXd& b = l.basis();
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c) basis.push_back(b(r, c));
  j["basis"] = basis;
  return j;
}

Subspace subspace_from_obj(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw JsonError("subspace: missing n");
  const int n = j["n"].get<int>();
  if (n < 1) throw JsonError("subspace: n must be positive");
  if (!j.contains("basis")) throw JsonError("subspace: missing basis");
  const Eigen::VectorXd flat = vec_from_json(j["basis"]);
  if (flat.size() != 2 * n * n) throw JsonError("subspace: basis must hold 2n*n numbers");
  Eigen::MatrixXd m(2 * n, n);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < 2 * n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = flat(k++);
  // Serialized bases are orthonormal and adopted verbatim so round trips
  // preserve bytes; anything else is canonicalized.
  try {
    return from_orthonormal(m);
  } catch (const RankDeficient&) {
    return from_basis(m);
  }
}

json set_to_obj(const PolyhedralSet& set) {
  json j;
  j["A"] = rows_to_json(set.ineq_matrix());
  j["b"] = vec_to_json(set.ineq_rhs());
  if (set.eq_matrix().rows() > 0) {
    j["E"] = rows_to_json(set.eq_matrix());
    j["e"] = vec_to_json(set.eq_rhs());
  }
  return j;
}

PolyhedralSet set_from_obj(const json& j, int n) {
  if (!j.contains("A") || !j.contains("b")) throw JsonError("set: missing A or b");
  Eigen::MatrixXd a = rows_from_json(j["A"], n);
  Eigen::VectorXd b = vec_from_json(j["b"]);
  if (a.rows() > 0 && a.cols() != n) throw JsonError("set: A width disagrees with n");
  if (a.rows() == 0) a.resize(0, n);
  if (j.contains("E") != j.contains("e")) throw JsonError("set: E and e must come together");
  Eigen::MatrixXd e(0, n);
  Eigen::VectorXd erhs(0);
  if (j.contains("E")) {
    e = rows_from_json(j["E"], n);
    if (e.rows() > 0 && e.cols() != n) throw JsonError("set: E width disagrees with n");
    if (e.rows() == 0) e.resize(0, n);
    erhs = vec_from_json(j["e"]);
  }
  try {
    return PolyhedralSet(n, std::move(a), std::move(b), std::move(e), std::move(erhs));
  } catch (const Error& err) {
    throw JsonError(std::string("set: ") + err.what());
  }
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::NoRegularSubspace: return "NoRegularSubspace";
    case SolveStatus::ApproximationFailed: return "ApproximationFailed";
  }
  return "MaxIterations";
}

SolveStatus status_from_name(const std::string& s) {
  if (s == "Converged") return SolveStatus::Converged;
  if (s == "MaxIterations") return SolveStatus::MaxIterations;
  if (s == "NoRegularSubspace") return SolveStatus::NoRegularSubspace;
  if (s == "ApproximationFailed") return SolveStatus::ApproximationFailed;
  throw JsonError("trace: unknown status '" + s + "'");
}

json doubles_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (const double d : v) out.push_back(d);
  return out;
}

std::vector<double> doubles_from_json(const json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(e.get<double>());
  return out;
}

}  // namespace

std::string to_json(const Subspace& l) { return subspace_to_obj(l).dump(); }

Subspace subspace_from_json(const std::string& text) { return subspace_from_obj(parse(text)); }

std::string to_json(const PolyhedralSet& set) { return set_to_obj(set).dump(); }

PolyhedralSet set_from_json(const std::string& text, int n) {
  return set_from_obj(parse(text), n);
}

std::string to_json(const GeneralizedEquation& ge) {
  json j;
  j["n"] = ge.dim();
  json smooth;
  if (ge.smooth().kind() == SmoothMap::Kind::Affine) {
    smooth["kind"] = "affine";
    smooth["M"] = rows_to_json(ge.smooth().affine_matrix());
    smooth["q"] = vec_to_json(ge.smooth().affine_shift());
  } else {
    smooth["kind"] = "named";
    smooth["name"] = ge.smooth().name();
  }
  j["smooth"] = smooth;
  j["C"] = set_to_obj(ge.set());
  j["y_target"] = vec_to_json(ge.y_target());
  return j.dump();
}

GeneralizedEquation problem_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("n") || !j["n"].is_number_integer()) throw JsonError("problem: missing n");
  const int n = j["n"].get<int>();
  if (n < 1) throw JsonError("problem: n must be positive");
  if (!j.contains("smooth") || !j.contains("C")) throw JsonError("problem: missing smooth or C");

  const json& s = j["smooth"];
  if (!s.contains("kind")) throw JsonError("problem: smooth needs a kind");
  SmoothMap f = [&]() {
    const std::string kind = s["kind"].get<std::string>();
    if (kind == "affine") {
      if (!s.contains("M") || !s.contains("q")) throw JsonError("problem: affine needs M and q");
      Eigen::MatrixXd m = rows_from_json(s["M"], n);
      Eigen::VectorXd q = vec_from_json(s["q"]);
      if (m.rows() != n || m.cols() != n || q.size() != n)
        throw JsonError("problem: affine shapes disagree with n");
      return SmoothMap::affine(std::move(m), std::move(q));
    }
    if (kind == "named") {
      if (!s.contains("name")) throw JsonError("problem: named map needs a name");
      try {
        return SmoothMap::named(s["name"].get<std::string>(), n);
      } catch (const Error& err) {
        throw JsonError(std::string("problem: ") + err.what());
      }
    }
    throw JsonError("problem: unknown smooth kind '" + kind + "'");
  }();

  PolyhedralSet c = set_from_obj(j["C"], n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  if (j.contains("y_target")) {
    y = vec_from_json(j["y_target"]);
    if (y.size() != n) throw JsonError("problem: y_target length disagrees with n");
  }
  return GeneralizedEquation(std::move(f), std::move(c), std::move(y));
}

std::string to_json(const NewtonTrace& trace) {
  json j;
  j["status"] = status_name(trace.status);
  json iters = json::array();
  for (const auto& rec : trace.iterations) {
    json it;
    it["x"] = vec_to_json(rec.x);
    it["xhat"] = vec_to_json(rec.xhat);
    it["yhat"] = vec_to_json(rec.yhat);
    it["c_norm"] = rec.c_norm;
    it["residual"] = rec.residual;
    iters.push_back(it);
  }
  j["iterations"] = iters;
  j["rate_ratios"] = doubles_to_json(trace.rate_ratios);
  j["realized_eta"] = doubles_to_json(trace.realized_eta);
  j["final_x"] = vec_to_json(trace.final_x);
  j["final_residual"] = trace.final_residual;
  return j.dump();
}

NewtonTrace trace_from_json(const std::string& text) {
  const json j = parse(text);
  NewtonTrace trace;
  trace.status = status_from_name(j.at("status").get<std::string>());
  for (const auto& it : j.at("iterations")) {
    IterationRecord rec;
    rec.x = vec_from_json(it.at("x"));
    rec.xhat = vec_from_json(it.at("xhat"));
    rec.yhat = vec_from_json(it.at("yhat"));
    rec.c_norm = it.at("c_norm").get<double>();
    rec.residual = it.at("residual").get<double>();
    trace.iterations.push_back(std::move(rec));
  }
  trace.rate_ratios = doubles_from_json(j.at("rate_ratios"));
  trace.realized_eta = doubles_from_json(j.at("realized_eta"));
  trace.final_x = vec_from_json(j.at("final_x"));
  trace.final_residual = j.at("final_residual").get<double>();
  return trace;
}

std::string to_json(const RegularityReport& report) {
  json j;
  j["scd_regular"] = report.scd_regular;
  j["scd_reg_modulus"] = report.modulus_finite ? json(report.scd_reg_modulus) : json();
  json members = json::array();
  for (const auto& md : report.per_member) {
    json m;
    m["id"] = md.id;
    m["regular"] = md.regular;
    m["c_norm"] = md.c_norm ? json(*md.c_norm) : json();
    m["c_psd"] = md.c_psd ? json(*md.c_psd) : json();
    members.push_back(m);
  }
  j["per_member"] = members;
  j["lsubreg_modulus"] = report.lsubreg_modulus ? json(*report.lsubreg_modulus) : json();
  j["semismooth_star_asserted"] = report.semismooth_star_asserted;
  if (report.smr_certificate) {
    const auto& cert = *report.smr_certificate;
    json c;
    c["status"] = cert.status == CertificateStatus::Certified    ? "Certified"
                  : cert.status == CertificateStatus::Refuted    ? "Refuted"
                                                                 : "Inconclusive";
    c["method"] = cert.method == CertificateMethod::Pairwise ? "Pairwise" : "Sampled";
    c["samples"] = cert.samples;
    c["witness_weights"] = cert.witness_weights ? vec_to_json(*cert.witness_weights) : json();
    c["witness_sigma_min"] = cert.witness_sigma_min ? json(*cert.witness_sigma_min) : json();
    j["smr_certificate"] = c;
  } else {
    j["smr_certificate"] = json();
  }
  j["tilt_stable"] = report.tilt_stable ? json(*report.tilt_stable) : json();
  j["tilt_modulus"] = report.tilt_modulus ? json(*report.tilt_modulus) : json();
  json notes = json::array();
  for (const auto& note : report.notes) notes.push_back(note);
  j["notes"] = notes;
  return j.dump();
}

RegularityReport report_from_json(const std::string& text) {
  const json j = parse(text);
  RegularityReport report;
  report.scd_regular = j.at("scd_regular").get<bool>();
  report.modulus_finite = !j.at("scd_reg_modulus").is_null();
  report.scd_reg_modulus = report.modulus_finite ? j["scd_reg_modulus"].get<double>() : 0.0;
  for (const auto& m : j.at("per_member")) {
    MemberDiagnostics md;
    md.id = m.at("id").get<int>();
    md.regular = m.at("regular").get<bool>();
    if (!m.at("c_norm").is_null()) md.c_norm = m["c_norm"].get<double>();
    if (!m.at("c_psd").is_null()) md.c_psd = m["c_psd"].get<bool>();
    report.per_member.push_back(md);
  }
  if (!j.at("lsubreg_modulus").is_null())
    report.lsubreg_modulus = j["lsubreg_modulus"].get<double>();
  report.semismooth_star_asserted = j.at("semismooth_star_asserted").get<bool>();
  if (!j.at("smr_certificate").is_null()) {
    const json& c = j["smr_certificate"];
    CertificateResult cert;
    const std::string status = c.at("status").get<std::string>();
    cert.status = status == "Certified"  ? CertificateStatus::Certified
                  : status == "Refuted"  ? CertificateStatus::Refuted
                                         : CertificateStatus::Inconclusive;
    cert.method = c.at("method").get<std::string>() == "Pairwise" ? CertificateMethod::Pairwise
                                                                  : CertificateMethod::Sampled;
    cert.samples = c.at("samples").get<int>();
    if (!c.at("witness_weights").is_null())
      cert.witness_weights = vec_from_json(c["witness_weights"]);
    if (!c.at("witness_sigma_min").is_null())
      cert.witness_sigma_min = c["witness_sigma_min"].get<double>();
    report.smr_certificate = cert;
  }
  if (!j.at("tilt_stable").is_null()) report.tilt_stable = j["tilt_stable"].get<bool>();
  if (!j.at("tilt_modulus").is_null()) report.tilt_modulus = j["tilt_modulus"].get<double>();
  for (const auto& note : j.at("notes")) report.notes.push_back(note.get<std::string>());
  return report;
}

std::string to_json(const FacesReport& report) {
  json j;
  j["n"] = report.n;
  j["count"] = static_cast<int>(report.faces.size());
  json list = json::array();
  for (size_t i = 0; i < report.faces.size(); ++i) {
    const Face& f = report.faces[i];
    json entry;
    json active = json::array();
    for (const int a : f.active) active.push_back(a);
    entry["active"] = active;
    entry["span_dim"] = f.span_dim();
    entry["lineality"] = cols_to_json(f.generators.lineality);
    entry["rays"] = cols_to_json(f.generators.rays);
    entry["span_basis"] = cols_to_json(f.span_basis);
    if (i < report.subspaces.size()) entry["subspace"] = subspace_to_obj(report.subspaces[i]);
    list.push_back(entry);
  }
  j["faces"] = list;
  return j.dump();
}

FacesReport faces_report_from_json(const std::string& text) {
  const json j = parse(text);
  FacesReport report;
  report.n = j.at("n").get<int>();
  const Eigen::Index n = report.n;
  for (const auto& entry : j.at("faces")) {
    Face f;
    for (const auto& a : entry.at("active")) f.active.push_back(a.get<int>());
    f.generators.lineality = cols_from_json(entry.at("lineality"), n);
    f.generators.rays = cols_from_json(entry.at("rays"), n);
    f.span_basis = cols_from_json(entry.at("span_basis"), n);
    report.faces.push_back(std::move(f));
    if (entry.contains("subspace"))
      report.subspaces.push_back(subspace_from_obj(entry["subspace"]));
  }
  return report;
}

}  // namespace scd::io
