#include "scd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "scd/errors.hpp"
#include "scd/tolerances.hpp"

namespace scd {

namespace {

bool symmetric_part_psd(const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol::psd;
}

double sigma_min(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

// Roots t of det(t a + (1 - t) b) = 0 inside (0, 1), found as the real
// eigenvalues of the pencil (b, b - a).
std::vector<double> interior_singular_weights(const Eigen::MatrixXd& a,
                                              const Eigen::MatrixXd& b) {
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
  ges.compute(b, b - a, false);
  std::vector<double> out;
  const auto alphas = ges.alphas();
  const auto betas = ges.betas();
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    const std::complex<double> alpha = alphas(i);
    const double beta = betas(i);
    if (std::abs(beta) <= 1e-14 * std::max(1.0, std::abs(alpha))) continue;
    const std::complex<double> t = alpha / beta;
    if (std::abs(t.imag()) > 1e-9 * std::max(1.0, std::abs(t.real()))) continue;
    const double tr = t.real();
    if (tr > 1e-12 && tr < 1.0 - 1e-12) out.push_back(tr);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RegularityReport scd_regularity(const DerivativeBundle& bundle) {
  if (bundle.members.empty()) throw EmptyBundle("scd_regularity: bundle has no members");
  RegularityReport report;
  report.scd_regular = true;
  double modulus = 0.0;
  for (size_t i = 0; i < bundle.members.size(); ++i) {
    MemberDiagnostics md;
    md.id = static_cast<int>(i);
    md.regular = is_regular(bundle.members[i].subspace);
    if (md.regular) {
      const Eigen::MatrixXd c = c_matrix(bundle.members[i].subspace);
      md.c_norm = operator_norm(c);
      md.c_psd = symmetric_part_psd(c);
      modulus = std::max(modulus, *md.c_norm);
    } else {
      report.scd_regular = false;
    }
    report.per_member.push_back(std::move(md));
  }
  report.modulus_finite = report.scd_regular;
  report.scd_reg_modulus = report.scd_regular ? modulus : 0.0;
  return report;
}

double subregularity_modulus(const DerivativeBundle& bundle, bool semismooth_star_assumed) {
  const RegularityReport report = scd_regularity(bundle);
  if (!report.scd_regular)
    throw NotRegular("subregularity_modulus: bundle contains an irregular member");
  (void)semismooth_star_assumed;  // recorded by callers; the value is the same bound
  return report.scd_reg_modulus;
}

CertificateResult strong_regularity_certificate(const std::vector<Eigen::MatrixXd>& zs,
                                                int samples, unsigned seed) {
  if (zs.empty()) throw EmptyBundle("strong_regularity_certificate: no matrices given");
  const Eigen::Index n = zs.front().cols();
  for (const auto& z : zs)
    if (z.rows() != 2 * n || z.cols() != n)
      throw DimensionMismatch("strong_regularity_certificate: matrices must be 2n x n");

  std::vector<Eigen::MatrixXd> lowers;
  lowers.reserve(zs.size());
  for (const auto& z : zs) lowers.push_back(z.bottomRows(n));

  const size_t m = lowers.size();
  CertificateResult result;
  result.method = CertificateMethod::Pairwise;

  auto refute = [&](const Eigen::VectorXd& weights) -> bool {
    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(n, n);
    for (size_t i = 0; i < m; ++i) combo += weights(static_cast<Eigen::Index>(i)) * lowers[i];
    const double s = sigma_min(combo);
    if (s <= tol::witness_singular) {
      result.status = CertificateStatus::Refuted;
      result.witness_weights = weights;
      result.witness_sigma_min = s;
      return true;
    }
    return false;
  };

  // Vertices.
  for (size_t i = 0; i < m; ++i) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    w(static_cast<Eigen::Index>(i)) = 1.0;
    if (refute(w)) return result;
  }

  // Pairs, exactly.
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      for (const double t : interior_singular_weights(lowers[i], lowers[j])) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        w(static_cast<Eigen::Index>(i)) = t;
        w(static_cast<Eigen::Index>(j)) = 1.0 - t;
        if (refute(w)) return result;
      }
    }
  }

  if (m <= 2) {
    // Vertex plus exact pair coverage is exhaustive here.
    result.status = CertificateStatus::Certified;
    return result;
  }

  // Interior sampling; can refute but never certify.
  result.method = CertificateMethod::Sampled;
  result.samples = samples;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_dist(1.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd w(static_cast<Eigen::Index>(m));
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w(i) = exp_dist(rng);
      total += w(i);
    }
    w /= total;
    if (refute(w)) {
      result.samples = s + 1;
      return result;
    }
  }
  result.status = CertificateStatus::Inconclusive;
  return result;
}

MonotoneVerdict monotone_strong_regularity(const DerivativeBundle& bundle) {
  const RegularityReport report = scd_regularity(bundle);
  MonotoneVerdict verdict;
  if (!report.scd_regular) {
    verdict.strongly_regular = false;
    verdict.reason = "bundle contains an irregular member";
    return verdict;
  }
  for (const auto& md : report.per_member) {
    if (md.c_psd.has_value() && !*md.c_psd) {
      verdict.strongly_regular = false;
      verdict.reason = "member " + std::to_string(md.id) +
                       " has a C matrix with a negative symmetric-part eigenvalue";
      return verdict;
    }
  }
  verdict.strongly_regular = true;
  verdict.reason = "bundle regular with positive semidefinite C matrices";
  return verdict;
}

TiltVerdict tilt_stability(const DerivativeBundle& bundle) {
  const RegularityReport report = scd_regularity(bundle);
  TiltVerdict verdict;
  if (!report.scd_regular) {
    verdict.tilt_stable = false;
    verdict.reason = "subgradient bundle contains an irregular member";
    return verdict;
  }
  for (const auto& md : report.per_member) {
    if (md.c_psd.has_value() && !*md.c_psd) {
      verdict.tilt_stable = false;
      verdict.reason = "member " + std::to_string(md.id) +
                       " has a C matrix that is not positive semidefinite";
      return verdict;
    }
  }
  verdict.tilt_stable = true;
  verdict.modulus = report.scd_reg_modulus;
  verdict.reason = "bundle regular with positive semidefinite C matrices";
  return verdict;
}

Eigen::MatrixXd phi_normalized_basis(const Subspace& l, const Eigen::MatrixXd& nabla_phi) {
  const int n = l.n();
  if (nabla_phi.rows() != 2 * n || nabla_phi.cols() != 2 * n)
    throw DimensionMismatch("phi_normalized_basis: transform must be 2n x 2n");
  const Eigen::MatrixXd mapped = nabla_phi * l.basis();
  const Eigen::MatrixXd head = mapped.topRows(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(head);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= tol::rank * sv(0))
    throw NotRegular("phi_normalized_basis: transformed upper block is singular");
  // Solve basis * head^{-1} by transposing.
  return head.transpose().partialPivLu().solve(l.basis().transpose()).transpose();
}

Eigen::MatrixXd hypomonotone_transform(int n, double gamma) {
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  phi.topLeftCorner(n, n) = (1.0 + gamma) * Eigen::MatrixXd::Identity(n, n);
  phi.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  phi.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return phi;
}

double monotonicity_defect(const Eigen::MatrixXd& jac) {
  if (jac.rows() != jac.cols()) throw DimensionMismatch("monotonicity_defect: matrix not square");
  const Eigen::MatrixXd sym = 0.5 * (jac + jac.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

}  // namespace scd
