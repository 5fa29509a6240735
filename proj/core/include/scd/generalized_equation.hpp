#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scd/bundle.hpp"
#include "scd/polyhedral.hpp"
#include "scd/subspace.hpp"

namespace scd {

// A continuously differentiable map R^n -> R^n with a hand-coded
// Jacobian. Affine maps keep their data for serialization; named maps
// come from a small registry of smooth test nonlinearities.
class SmoothMap {
 public:
  enum class Kind { Affine, Named };

  static SmoothMap affine(Eigen::MatrixXd m, Eigen::VectorXd q);
  static SmoothMap named(const std::string& name, int n);
  static std::vector<std::string> registry_names();

  int dim() const { return n_; }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Eigen::MatrixXd& affine_matrix() const { return m_; }
  const Eigen::VectorXd& affine_shift() const { return q_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return eval_(x); }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const { return jac_(x); }

 private:
  SmoothMap() = default;

  int n_ = 0;
  Kind kind_ = Kind::Affine;
  std::string name_;
  Eigen::MatrixXd m_;
  Eigen::VectorXd q_;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval_;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_;
};

// The inclusion 0 in f(x) + N_C(x) - y_target for smooth f and a convex
// polyhedral set C.
class GeneralizedEquation {
 public:
  GeneralizedEquation(SmoothMap f, PolyhedralSet c, Eigen::VectorXd y_target);

  int dim() const { return set_.dim(); }
  const SmoothMap& smooth() const { return f_; }
  const PolyhedralSet& set() const { return set_; }
  const Eigen::VectorXd& y_target() const { return y_; }

  // g = f - y_target, the map whose zero against the normal cone we seek.
  Eigen::VectorXd shifted(const Eigen::VectorXd& x) const { return f_(x) - y_; }

 private:
  SmoothMap f_;
  PolyhedralSet set_;
  Eigen::VectorXd y_;
};

// A validated point of the graph: y = f(x) + v - y_target with x in C and
// v in the normal cone to C at x.
struct GraphPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd v;
};

// Builds a graph point from (x, v), checking both memberships.
GraphPoint graph_point(const GeneralizedEquation& ge, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& v);

// Derivative bundle of f + N_C - y_target at the graph point: the
// normal-cone bundle at (x, v) pushed through [[I,0],[Df,I]] for the
// primal flavor and [[I,0],[Df',I]] for the dual one. The constant shift
// does not enter.
DerivativeBundle bundle_at(const GeneralizedEquation& ge, const GraphPoint& p,
                           BundleFlavor flavor);

// Derivative bundle of a single-valued map with the given candidate
// Jacobians: rge(I, A) per matrix for the primal flavor, rge(I, A') for
// the dual. Duplicate subspaces are merged.
DerivativeBundle lift_jacobians(const std::vector<Eigen::MatrixXd>& jacobians,
                                BundleFlavor flavor);

}  // namespace scd
