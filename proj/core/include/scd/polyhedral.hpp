#pragma once

#include <vector>

#include <Eigen/Dense>

#include "scd/bundle.hpp"
#include "scd/errors.hpp"
#include "scd/tolerances.hpp"

namespace scd {

class PolyhedralCone;

// A nonempty convex polyhedral set {x : Ax <= b, Ex = e}. Rows are
// normalized to unit norm at construction; zero rows are dropped when
// vacuous and rejected when they make the set empty. Construction runs a
// feasibility check and caches a feasible point.
class PolyhedralSet {
 public:
  PolyhedralSet(int n, Eigen::MatrixXd a, Eigen::VectorXd b);
  PolyhedralSet(int n, Eigen::MatrixXd a, Eigen::VectorXd b,
                Eigen::MatrixXd e_mat, Eigen::VectorXd e_rhs);

  static PolyhedralSet whole_space(int n);

  int dim() const { return n_; }
  const Eigen::MatrixXd& ineq_matrix() const { return a_; }
  const Eigen::VectorXd& ineq_rhs() const { return b_; }
  const Eigen::MatrixXd& eq_matrix() const { return e_; }
  const Eigen::VectorXd& eq_rhs() const { return erhs_; }
  const Eigen::VectorXd& feasible_point() const { return feasible_; }

  bool contains(const Eigen::VectorXd& x, double tol = tol::feasibility) const;

  // Indices of inequality rows active at x (|a_i'x - b_i| <= tol).
  std::vector<int> active_rows(const Eigen::VectorXd& x, double tol = tol::activity) const;

 private:
  void normalize_and_check();

  int n_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd e_;
  Eigen::VectorXd erhs_;
  Eigen::VectorXd feasible_;
};

// A polyhedral cone {u : A u <= 0, E u = 0} with unit-norm rows.
class PolyhedralCone {
 public:
  PolyhedralCone(int n, Eigen::MatrixXd a_ineq, Eigen::MatrixXd a_eq);

  int dim() const { return n_; }
  const Eigen::MatrixXd& inequalities() const { return ineq_; }
  const Eigen::MatrixXd& equalities() const { return eq_; }

  bool contains(const Eigen::VectorXd& u, double tol = tol::feasibility) const;
  PolyhedralSet as_set() const;

 private:
  int n_ = 0;
  Eigen::MatrixXd ineq_;
  Eigen::MatrixXd eq_;
};

// V-representation of a cone: the columns of lineality span the largest
// linear subspace contained in it, the columns of rays are unit extreme
// directions modulo that subspace.
struct GeneratorSet {
  Eigen::MatrixXd lineality;
  Eigen::MatrixXd rays;
};

struct Face {
  // Canonical active set: every inequality row of the parent cone that
  // vanishes identically on the face, sorted.
  std::vector<int> active;
  GeneratorSet generators;
  // Orthonormal basis of span(F - F), n x k.
  Eigen::MatrixXd span_basis;

  int span_dim() const { return static_cast<int>(span_basis.cols()); }
};

// Euclidean projection onto the set. Primal active-set QP warm-started at
// the cached feasible point; KKT residual of the returned point is below
// tol::kkt. Throws QPFailure if the iteration cap (100 * rows) is hit.
Eigen::VectorXd project(const PolyhedralSet& set, const Eigen::VectorXd& x);

// True when xstar is a nonnegative combination of the active inequality
// rows plus any combination of equality rows at x, up to a small residual.
bool is_normal_at(const PolyhedralSet& set, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& xstar);

// Tangent cone at a member point: active inequality rows become the
// cone's inequalities, equality rows carry over.
PolyhedralCone tangent_cone(const PolyhedralSet& set, const Eigen::VectorXd& x);

// Tangent cone intersected with the hyperplane orthogonal to xstar.
// Requires xstar in the normal cone at x; the hyperplane is dropped when
// xstar = 0.
PolyhedralCone critical_cone(const PolyhedralSet& set, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& xstar);

// Lineality space plus extreme rays, found by enumerating row subsets
// whose null space exceeds the lineality by one dimension. Exponential in
// the number of rows; guarded by ScaleLimitExceeded for dim > 12 or more
// than 16 inequality rows.
GeneratorSet cone_generators(const PolyhedralCone& cone);

// All faces of the cone, each with generators, span basis, and canonical
// active set. Ordered by decreasing span dimension, ties broken
// lexicographically on the active set. Same scale guard as
// cone_generators.
std::vector<Face> faces(const PolyhedralCone& cone);

// The derivative bundle of the normal-cone map of the set at (x, xstar):
// one member rge(B, I - B) per face of the critical cone, B the
// orthogonal projector onto the face's span. Members follow the face
// ordering. The family is self-adjoint, so primal and dual collections
// agree; the returned flavor is Dual.
DerivativeBundle sp_star_normal_cone(const PolyhedralSet& set, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& xstar);

}  // namespace scd
