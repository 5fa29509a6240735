#include "scd/subspace.hpp"

#include <cmath>
#include <utility>

namespace scd {

namespace {

// Flip column signs so the entry of largest magnitude in each column is
// positive. Keeps columns orthonormal, makes the representative basis
// deterministic across runs.
void fix_column_signs(Eigen::MatrixXd& q) {
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    Eigen::Index imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    if (q(imax, j) < 0.0) q.col(j) = -q.col(j);
  }
}

}  // namespace

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

bool Subspace::contains(const Eigen::VectorXd& z, double tol) const {
  if (z.size() != 2 * n()) throw DimensionMismatch("subspace: vector length mismatch");
  const double scale = z.norm();
  if (scale == 0.0) return true;
  return (z - basis_ * (basis_.transpose() * z)).norm() <= tol * scale;
}

Subspace from_basis(const Eigen::MatrixXd& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (cols < 1 || rows != 2 * cols)
    throw DimensionMismatch("from_basis: expected a 2n x n matrix with n >= 1");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(cols - 1) <= tol::rank * sv(0))
    throw RankDeficient("from_basis: columns are rank deficient");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  fix_column_signs(q);
  return Subspace(std::move(q));
}

Subspace from_orthonormal(const Eigen::MatrixXd& q) {
  const Eigen::Index rows = q.rows();
  const Eigen::Index cols = q.cols();
  if (cols < 1 || rows != 2 * cols)
    throw DimensionMismatch("from_orthonormal: expected a 2n x n matrix with n >= 1");
  const Eigen::MatrixXd gram = q.transpose() * q;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (defect > tol::orth)
    throw RankDeficient("from_orthonormal: columns are not orthonormal");
  return Subspace(q);
}

double distance(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw DimensionMismatch("distance: subspaces of different ambient dimension");
  return operator_norm(a.projector() - b.projector());
}

Subspace orthogonal_complement(const Subspace& l) {
  const int n = l.n();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(l.basis());
  Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  return from_basis(full.rightCols(n));
}

Eigen::MatrixXd symplectic_matrix(int n) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  s.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return s;
}

Eigen::MatrixXd sum_transform(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw DimensionMismatch("sum_transform: Jacobian must be square");
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  t.bottomLeftCorner(n, n) = g;
  return t;
}

Subspace adjoint(const Subspace& l) {
  const Subspace comp = orthogonal_complement(l);
  return from_basis(symplectic_matrix(l.n()) * comp.basis());
}

bool is_regular(const Subspace& l) {
  const Eigen::MatrixXd low = l.lower();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(low);
  const auto& sv = svd.singularValues();
  // The basis is orthonormal, so its largest singular value is 1 and the
  // relative cutoff reduces to an absolute one on the lower block.
  return sv(sv.size() - 1) > tol::rank;
}

Eigen::MatrixXd c_matrix(const Subspace& l) {
  if (!is_regular(l)) throw NotRegular("c_matrix: lower block is singular");
  const Eigen::MatrixXd up = l.upper();
  const Eigen::MatrixXd low = l.lower();
  // Solve C * low = up by transposing.
  return low.transpose().partialPivLu().solve(up.transpose()).transpose();
}

TransformMatrix::TransformMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 2 || entries_.rows() % 2 != 0)
    throw DimensionMismatch("TransformMatrix: expected a square 2n x 2n matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(entries_);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) throw SingularTransform("TransformMatrix: zero matrix");
  // |det| relative to sigma_max^{2n}, computed as a product of ratios to
  // dodge overflow.
  double ratio = 1.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) ratio *= sv(i) / sv(0);
  if (ratio <= tol::rank) throw SingularTransform("TransformMatrix: numerically singular");
}

Subspace transform(const Subspace& l, const TransformMatrix& t) {
  if (t.half_dim() != l.n())
    throw DimensionMismatch("transform: transform and subspace dimensions differ");
  return from_basis(t.entries() * l.basis());
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.n() == b.n() && distance(a, b) <= tol::subspace_eq;
}

bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

}  // namespace scd
