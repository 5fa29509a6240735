#pragma once

#include <Eigen/Dense>

#include "scd/errors.hpp"
#include "scd/tolerances.hpp"

namespace scd {

// An n-dimensional linear subspace of R^{2n}, stored as an orthonormal
// 2n x n basis. Elements are read as pairs (u, v) with u the first n
// coordinates and v the last n. The collection of all such subspaces is a
// compact metric space under the projector distance, and it is where the
// graphical derivatives of our set-valued maps live.
class Subspace {
 public:
  Subspace() = default;

  int n() const { return static_cast<int>(basis_.cols()); }

  // 2n x n, orthonormal columns.
  const Eigen::MatrixXd& basis() const { return basis_; }

  // Orthogonal projector onto the subspace, 2n x 2n.
  Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }

  // Top n x n block of the basis (the u components).
  Eigen::MatrixXd upper() const { return basis_.topRows(n()); }

  // Bottom n x n block of the basis (the v components).
  Eigen::MatrixXd lower() const { return basis_.bottomRows(n()); }

  bool contains(const Eigen::VectorXd& z, double tol = tol::subspace_eq) const;

 private:
  explicit Subspace(Eigen::MatrixXd orthonormal) : basis_(std::move(orthonormal)) {}
  friend Subspace from_basis(const Eigen::MatrixXd& m);
  friend Subspace from_orthonormal(const Eigen::MatrixXd& q);

  Eigen::MatrixXd basis_;
};

// Largest singular value. Zero for empty matrices.
double operator_norm(const Eigen::MatrixXd& m);

// Builds the subspace spanned by the columns of m (2n x n, full column
// rank). The stored representative is the orthonormal factor of a
// column-pivoted QR with column signs fixed, so equal inputs give
// bit-equal representatives. Throws DimensionMismatch when m is not
// 2n x n, RankDeficient when the columns are dependent.
Subspace from_basis(const Eigen::MatrixXd& m);

// Adopts q verbatim after checking its columns are orthonormal within
// tol::orth. Use when the stored representation itself matters, e.g. when
// reading back a serialized basis.
Subspace from_orthonormal(const Eigen::MatrixXd& q);

// Projector distance ||P_a - P_b||. A metric; two subspaces coincide
// exactly when it vanishes.
double distance(const Subspace& a, const Subspace& b);

// Orthonormal basis of the orthogonal complement inside R^{2n}. The
// complement of an n-dimensional subspace is again n-dimensional, so the
// result lives in the same space.
Subspace orthogonal_complement(const Subspace& l);

// The adjoint subspace {(-v, u) : (u, v) in the orthogonal complement}.
// An involutive isometry: adjoint(adjoint(l)) == l and distances are
// preserved. For l = rge(I, A) the adjoint is rge(I, A').
Subspace adjoint(const Subspace& l);

// True when the lower block of the basis is nonsingular, i.e. (u, 0) in L
// forces u = 0. Exactly these subspaces admit a C matrix.
bool is_regular(const Subspace& l);

// The unique n x n matrix C with l = rge(C, I): C = upper * lower^{-1}.
// Basis independent. Throws NotRegular when is_regular(l) fails.
Eigen::MatrixXd c_matrix(const Subspace& l);

// A nonsingular linear change of coordinates on R^{2n}. Validated at
// construction: square, even-dimensional, and numerically invertible.
class TransformMatrix {
 public:
  explicit TransformMatrix(Eigen::MatrixXd entries);

  int half_dim() const { return static_cast<int>(entries_.rows()) / 2; }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

// Image subspace T(L). Nonsingular T maps n-dimensional subspaces to
// n-dimensional subspaces, so the result is well formed.
Subspace transform(const Subspace& l, const TransformMatrix& t);

// The 2n x 2n block matrix [[0, -I], [I, 0]]. Multiplying the complement
// basis by it realizes the adjoint.
Eigen::MatrixXd symplectic_matrix(int n);

// [[I, 0], [G, I]]: the graph transform induced by adding a smooth map
// with Jacobian G to a set-valued one.
Eigen::MatrixXd sum_transform(const Eigen::MatrixXd& g);

bool operator==(const Subspace& a, const Subspace& b);
bool operator!=(const Subspace& a, const Subspace& b);

}  // namespace scd
