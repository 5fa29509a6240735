#pragma once

// Dense helpers sized for desk-scale problems (tens of rows, n <= 12):
// rank decisions, a Lawson-Hanson nonnegative least squares, and a
// phase-I simplex used to certify feasibility of a constraint system.
// Internal API: no stability promises.

#include <Eigen/Dense>

namespace scd::detail {

int numeric_rank(const Eigen::MatrixXd& m);

// Orthonormal basis of the null space of m (k x n). Columns may be empty.
// A 0 x n matrix has the full identity-sized null space.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& m);

// Orthonormal basis of the column span of m (n x k), n x rank.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m);

struct NnlsResult {
  Eigen::VectorXd coeffs;  // nonnegative
  double residual = 0.0;   // ||g * coeffs - c||
};

// min ||g x - c|| subject to x >= 0.
NnlsResult nnls(const Eigen::MatrixXd& g, const Eigen::VectorXd& c);

struct FeasibilityResult {
  bool feasible = false;
  Eigen::VectorXd point;
};

// Finds some x with a x <= b, e_mat x = e_rhs, or reports that none exists.
FeasibilityResult lp_feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                    const Eigen::MatrixXd& e_mat, const Eigen::VectorXd& e_rhs);

}  // namespace scd::detail
