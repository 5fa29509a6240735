#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scd/bundle.hpp"

namespace scd {

struct MemberDiagnostics {
  int id = 0;
  bool regular = false;
  std::optional<double> c_norm;  // absent when irregular
  std::optional<bool> c_psd;     // symmetric part PSD; absent when irregular
};

enum class CertificateStatus { Certified, Refuted, Inconclusive };
enum class CertificateMethod { Pairwise, Sampled };

// Outcome of probing nonsingularity of the lower blocks over the convex
// hull of a matrix family. Refutations carry a verified witness.
struct CertificateResult {
  CertificateStatus status = CertificateStatus::Inconclusive;
  CertificateMethod method = CertificateMethod::Pairwise;
  int samples = 0;
  std::optional<Eigen::VectorXd> witness_weights;
  std::optional<double> witness_sigma_min;
};

struct RegularityReport {
  bool scd_regular = false;
  double scd_reg_modulus = 0.0;  // meaningful only when modulus_finite
  bool modulus_finite = false;
  std::vector<MemberDiagnostics> per_member;
  std::optional<double> lsubreg_modulus;
  bool semismooth_star_asserted = false;
  std::optional<CertificateResult> smr_certificate;
  std::optional<bool> tilt_stable;
  std::optional<double> tilt_modulus;
  std::vector<std::string> notes;
};

// Regular iff every member admits a C matrix; the modulus is the largest
// ||C|| over the bundle. Throws EmptyBundle on an empty bundle.
RegularityReport scd_regularity(const DerivativeBundle& bundle);

// The regularity modulus doubles as a bound for strong metric
// subregularity of the underlying map when the caller asserts the
// semismooth property; smooth-plus-polyhedral maps always have it.
// Throws NotRegular when some member is irregular.
double subregularity_modulus(const DerivativeBundle& bundle, bool semismooth_star_assumed);

// Tests nonsingularity of the lower n x n blocks over the convex hull of
// the given 2n x n matrices: each vertex, each pair exactly through a
// generalized eigenvalue problem, and for three or more matrices a seeded
// random sweep of interior combinations. Certified is only possible for
// one or two matrices, where the test is exhaustive.
CertificateResult strong_regularity_certificate(const std::vector<Eigen::MatrixXd>& zs,
                                                int samples = 10000, unsigned seed = 0);

struct MonotoneVerdict {
  bool strongly_regular = false;
  std::string reason;
};

// For maps the caller asserts to be locally maximally hypomonotone:
// strong metric regularity holds exactly when the bundle is regular with
// every C matrix positive semidefinite.
MonotoneVerdict monotone_strong_regularity(const DerivativeBundle& bundle);

struct TiltVerdict {
  bool tilt_stable = false;
  std::optional<double> modulus;  // equals the regularity modulus when stable
  std::string reason;
};

// For the subgradient map of a prox-regular function restricted to a
// polyhedral set: tilt stability of the minimizer is equivalent to bundle
// regularity plus positive semidefinite C matrices.
TiltVerdict tilt_stability(const DerivativeBundle& bundle);

// Z (pi_1(nabla_phi Z))^{-1}: rescales a basis so the transformed upper
// block is the identity. Throws NotRegular when that block is singular.
Eigen::MatrixXd phi_normalized_basis(const Subspace& l, const Eigen::MatrixXd& nabla_phi);

// [[(1 + gamma) I, I], [I, 0]]: the graph coordinates in which a locally
// maximally hypomonotone map with parameter gamma becomes the graph of a
// Lipschitz single-valued one.
Eigen::MatrixXd hypomonotone_transform(int n, double gamma);

// Smallest gamma >= 0 making sym(jac) + gamma I positive semidefinite.
double monotonicity_defect(const Eigen::MatrixXd& jac);

}  // namespace scd
