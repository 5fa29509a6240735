#include "scd/newton.hpp"

#include <algorithm>
#include <cmath>

namespace scd {

double natural_residual(const GeneralizedEquation& ge, const Eigen::VectorXd& x) {
  if (x.size() != ge.dim()) throw DimensionMismatch("natural_residual: bad vector length");
  return (x - project(ge.set(), x - ge.shifted(x))).norm();
}

GraphPoint approximation_step(const GeneralizedEquation& ge, const Eigen::VectorXd& x) {
  if (x.size() != ge.dim()) throw DimensionMismatch("approximation_step: bad vector length");
  const Eigen::VectorXd w = x - ge.shifted(x);
  const Eigen::VectorXd xhat = project(ge.set(), w);
  return graph_point(ge, xhat, w - xhat);
}

namespace {

const BundleMember* scan_regular(const DerivativeBundle& bundle) {
  for (const auto& member : bundle.members)
    if (is_regular(member.subspace)) return &member;
  return nullptr;
}

}  // namespace

const BundleMember& select_subspace(const DerivativeBundle& bundle, FaceStrategy strategy) {
  if (bundle.members.empty()) throw EmptyBundle("select_subspace: bundle has no members");

  const bool face_derived = bundle.members.front().face_dim >= 0;
  const BundleMember* preferred = nullptr;
  if (face_derived) {
    switch (strategy) {
      case FaceStrategy::WholeCriticalCone: {
        // Members are ordered by decreasing span dimension; the whole
        // cone is the unique face of maximal span.
        preferred = &bundle.members.front();
        break;
      }
      case FaceStrategy::LinealityFace: {
        preferred = &bundle.members.back();
        break;
      }
      case FaceStrategy::LargestRegular:
        break;
    }
  } else if (strategy != FaceStrategy::LargestRegular) {
    preferred = &bundle.members.front();
  }

  if (preferred != nullptr && is_regular(preferred->subspace)) return *preferred;
  const BundleMember* any = scan_regular(bundle);
  if (any == nullptr) throw NoRegularSubspace("select_subspace: every member is irregular");
  return *any;
}

Eigen::VectorXd newton_step(const GraphPoint& p, const Subspace& l) {
  if (!is_regular(l)) throw NotRegular("newton_step: selected subspace admits no C matrix");
  return p.x - c_matrix(l).transpose() * p.y;
}

Eigen::VectorXd newton_step_via_primal(const GraphPoint& p, const Subspace& l) {
  const Subspace primal = adjoint(l);
  const Eigen::MatrixXd b = primal.upper();
  const Eigen::MatrixXd a = primal.lower();
  // Solve a q = -yhat, step along b q. The lower block of the adjoint is
  // nonsingular exactly when l is regular.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol::rank)
    throw NotRegular("newton_step_via_primal: adjoint lower block is singular");
  const Eigen::VectorXd q = a.partialPivLu().solve(-p.y);
  return p.x + b * q;
}

NewtonTrace solve(const GeneralizedEquation& ge, const Eigen::VectorXd& x0,
                  const SolverOptions& opts, const std::optional<Eigen::VectorXd>& reference) {
  if (x0.size() != ge.dim()) throw DimensionMismatch("solve: bad start vector length");
  if (opts.max_iter < 1) throw Error("solve: max_iter must be at least 1");
  if (!(opts.tol_residual > 0)) throw Error("solve: tol_residual must be positive");
  if (reference && reference->size() != ge.dim())
    throw DimensionMismatch("solve: bad reference vector length");

  NewtonTrace trace;
  Eigen::VectorXd x = x0;

  for (int k = 0; k <= opts.max_iter; ++k) {
    const double residual = natural_residual(ge, x);
    if (residual <= opts.tol_residual) {
      trace.status = SolveStatus::Converged;
      trace.final_x = x;
      trace.final_residual = residual;
      return trace;
    }
    if (k == opts.max_iter) break;

    IterationRecord rec;
    rec.x = x;
    rec.residual = residual;

    GraphPoint p;
    try {
      p = approximation_step(ge, x);
    } catch (const Error&) {
      trace.status = SolveStatus::ApproximationFailed;
      trace.final_x = x;
      trace.final_residual = residual;
      return trace;
    }

    const BundleMember* member = nullptr;
    DerivativeBundle bundle;
    try {
      bundle = bundle_at(ge, p, BundleFlavor::Dual);
      member = &select_subspace(bundle, opts.face_strategy);
    } catch (const NoRegularSubspace&) {
      trace.status = SolveStatus::NoRegularSubspace;
      trace.final_x = x;
      trace.final_residual = residual;
      return trace;
    } catch (const Error&) {
      trace.status = SolveStatus::ApproximationFailed;
      trace.final_x = x;
      trace.final_residual = residual;
      return trace;
    }

    const Eigen::VectorXd xnext = newton_step(p, member->subspace);

    rec.xhat = p.x;
    rec.yhat = p.y;
    rec.subspace = member->subspace;
    rec.c_norm = operator_norm(c_matrix(member->subspace));
    rec.face_active = member->face_active;
    trace.iterations.push_back(std::move(rec));

    if (reference) {
      const double before = (x - *reference).norm();
      const double after = (xnext - *reference).norm();
      trace.rate_ratios.push_back(before > 1e-300 ? after / before : 0.0);
      double approx_gap = std::hypot((p.x - *reference).norm(), p.y.norm());
      trace.realized_eta.push_back(before > 1e-300 ? approx_gap / before : 0.0);
    }

    x = xnext;
  }

  trace.status = SolveStatus::MaxIterations;
  trace.final_x = x;
  trace.final_residual = natural_residual(ge, x);
  return trace;
}

}  // namespace scd
