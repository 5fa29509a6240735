#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "scd/generalized_equation.hpp"

namespace scd {

// Which face's subspace to use for the Newton step when the bundle offers
// a choice. Each strategy falls back to scanning for any regular member
// when its preferred one is irregular.
enum class FaceStrategy { WholeCriticalCone, LinealityFace, LargestRegular };

struct SolverOptions {
  double tol_residual = tol::residual_default;
  int max_iter = 50;
  FaceStrategy face_strategy = FaceStrategy::WholeCriticalCone;
};

enum class SolveStatus { Converged, MaxIterations, NoRegularSubspace, ApproximationFailed };

struct IterationRecord {
  Eigen::VectorXd x;
  Eigen::VectorXd xhat;
  Eigen::VectorXd yhat;
  Subspace subspace;
  double c_norm = 0.0;
  double residual = 0.0;
  std::vector<int> face_active;
};

struct NewtonTrace {
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<IterationRecord> iterations;
  Eigen::VectorXd final_x;
  double final_residual = 0.0;
  // Filled only when a reference solution is supplied: per-step error
  // ratios and the realized closeness of the approximation step.
  std::vector<double> rate_ratios;
  std::vector<double> realized_eta;
};

// ||x - P_C(x - g(x))|| with g = f - y_target. Zero exactly at solutions.
double natural_residual(const GeneralizedEquation& ge, const Eigen::VectorXd& x);

// One projection step onto the graph: xhat = P_C(x - g(x)), and yhat
// recovers the normal component (x - g(x)) - xhat. The result is a
// validated graph point close to (x, 0) when x is near a solution.
GraphPoint approximation_step(const GeneralizedEquation& ge, const Eigen::VectorXd& x);

// Picks a member according to the strategy. Face-derived bundles use the
// span dimension (the whole cone is the largest face, the lineality space
// the smallest); other bundles scan in stored order. Throws
// NoRegularSubspace when no member is regular, EmptyBundle when empty.
const BundleMember& select_subspace(const DerivativeBundle& bundle, FaceStrategy strategy);

// xhat - C' yhat for the dual subspace L = rge(C', I). Equivalent to
// solving A dx = -B yhat from any basis (B; A) of the adjoint of L.
Eigen::VectorXd newton_step(const GraphPoint& p, const Subspace& l);

// The same step computed through the adjoint basis; used to cross-check
// newton_step.
Eigen::VectorXd newton_step_via_primal(const GraphPoint& p, const Subspace& l);

// Runs the semismooth Newton iteration from x0. Deterministic: equal
// inputs give equal traces. Supplying the known solution as reference
// adds convergence-rate diagnostics to the trace.
NewtonTrace solve(const GeneralizedEquation& ge, const Eigen::VectorXd& x0,
                  const SolverOptions& opts = {},
                  const std::optional<Eigen::VectorXd>& reference = std::nullopt);

}  // namespace scd
