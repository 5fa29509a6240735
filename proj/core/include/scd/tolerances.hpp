#pragma once

// Numeric thresholds shared across the library. All comparisons in the
// public API route through these constants so behavior stays consistent.

namespace scd::tol {

// Orthonormality defect allowed in a stored basis: ||Z^T Z - I||_max.
inline constexpr double orth = 1e-10;

// Two subspaces are considered equal when the projector distance is below this.
inline constexpr double subspace_eq = 1e-9;

// Relative singular-value cutoff for rank decisions.
inline constexpr double rank = 1e-9;

// Constraint-activity detection |a_i'x - b_i| at a feasible point.
inline constexpr double activity = 1e-8;

// Feasibility slack for set membership tests.
inline constexpr double feasibility = 1e-8;

// Residual bound for normal-cone membership (nonnegative least squares).
inline constexpr double normal_residual = 1e-8;

// KKT residual required from the projection solver.
inline constexpr double kkt = 1e-9;

// Eigenvalue slack when testing positive semidefiniteness.
inline constexpr double psd = 1e-9;

// A convex-combination witness must be at least this singular to refute.
inline constexpr double witness_singular = 1e-7;

// Default stopping tolerance for the natural residual.
inline constexpr double residual_default = 1e-10;

}  // namespace scd::tol
