#include "scd/generalized_equation.hpp"

#include <cmath>
#include <utility>

namespace scd {

SmoothMap SmoothMap::affine(Eigen::MatrixXd m, Eigen::VectorXd q) {
  if (m.rows() != m.cols() || m.rows() != q.size() || m.rows() < 1)
    throw DimensionMismatch("SmoothMap::affine: expected square M and matching q");
  SmoothMap f;
  f.n_ = static_cast<int>(m.rows());
  f.kind_ = Kind::Affine;
  f.m_ = std::move(m);
  f.q_ = std::move(q);
  const Eigen::MatrixXd mm = f.m_;
  const Eigen::VectorXd qq = f.q_;
  f.eval_ = [mm, qq](const Eigen::VectorXd& x) { return (mm * x + qq).eval(); };
  f.jac_ = [mm](const Eigen::VectorXd&) { return mm; };
  return f;
}

std::vector<std::string> SmoothMap::registry_names() {
  return {"zero", "identity", "negate", "saddle", "saddle_sine", "quadratic_drift", "cross_coupling"};
}

SmoothMap SmoothMap::named(const std::string& name, int n) {
  if (n < 1) throw DimensionMismatch("SmoothMap::named: dimension must be positive");
  SmoothMap f;
  f.n_ = n;
  f.kind_ = Kind::Named;
  f.name_ = name;

  if (name == "zero") {
    f.eval_ = [n](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(n).eval(); };
    f.jac_ = [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(n, n).eval(); };
  } else if (name == "identity") {
    f.eval_ = [](const Eigen::VectorXd& x) { return x; };
    f.jac_ = [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(n, n).eval(); };
  } else if (name == "negate") {
    f.eval_ = [](const Eigen::VectorXd& x) { return (-x).eval(); };
    f.jac_ = [n](const Eigen::VectorXd&) { return (-Eigen::MatrixXd::Identity(n, n)).eval(); };
  } else if (name == "saddle") {
    // (x1, -x2): the linear part of the two-dimensional wedge example.
    if (n != 2) throw DimensionMismatch("SmoothMap::named: saddle is two-dimensional");
    f.eval_ = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd y(2);
      y << x(0), -x(1);
      return y;
    };
    f.jac_ = [](const Eigen::VectorXd&) {
      Eigen::MatrixXd j(2, 2);
      j << 1, 0, 0, -1;
      return j;
    };
  } else if (name == "saddle_sine") {
    // (sin x1, x2^2 - x2): same value and Jacobian as the saddle map at the origin,
    // genuinely nonlinear away from it.
    if (n != 2) throw DimensionMismatch("SmoothMap::named: saddle_sine is two-dimensional");
    f.eval_ = [](const Eigen::VectorXd& x) {
      Eigen::VectorXd y(2);
      y << std::sin(x(0)), x(1) * x(1) - x(1);
      return y;
    };
    f.jac_ = [](const Eigen::VectorXd& x) {
      Eigen::MatrixXd j(2, 2);
      j << std::cos(x(0)), 0, 0, 2 * x(1) - 1;
      return j;
    };
  } else if (name == "quadratic_drift") {
    // Componentwise x_i^2 / 2: vanishes with its Jacobian at the origin.
    f.eval_ = [](const Eigen::VectorXd& x) { return (0.5 * x.array().square()).matrix().eval(); };
    f.jac_ = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd(x.asDiagonal()); };
  } else if (name == "cross_coupling") {
    // f_i = x_i * x_{i+1 mod n}: a coupled perturbation, flat at 0.
    f.eval_ = [n](const Eigen::VectorXd& x) {
      Eigen::VectorXd y(n);
      for (int i = 0; i < n; ++i) y(i) = x(i) * x((i + 1) % n);
      return y;
    };
    f.jac_ = [n](const Eigen::VectorXd& x) {
      Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        const int k = (i + 1) % n;
        j(i, k) += x(i);
        j(i, i) += (k == i) ? x(i) : x(k);
      }
      return j;
    };
  } else {
    throw Error("SmoothMap::named: unknown map '" + name + "'");
  }
  return f;
}

GeneralizedEquation::GeneralizedEquation(SmoothMap f, PolyhedralSet c, Eigen::VectorXd y_target)
    : f_(std::move(f)), set_(std::move(c)), y_(std::move(y_target)) {
  if (f_.dim() != set_.dim() || y_.size() != set_.dim())
    throw DimensionMismatch("GeneralizedEquation: dimensions of f, C, y_target disagree");
}

GraphPoint graph_point(const GeneralizedEquation& ge, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& v) {
  if (x.size() != ge.dim() || v.size() != ge.dim())
    throw DimensionMismatch("graph_point: bad vector length");
  if (!ge.set().contains(x)) throw PointNotInSet("graph_point: x is not in C");
  if (!is_normal_at(ge.set(), x, v)) throw NotANormal("graph_point: v is not normal to C at x");
  GraphPoint p;
  p.x = x;
  p.v = v;
  p.y = ge.smooth()(x) + v - ge.y_target();
  return p;
}

DerivativeBundle bundle_at(const GeneralizedEquation& ge, const GraphPoint& p,
                           BundleFlavor flavor) {
  DerivativeBundle base = sp_star_normal_cone(ge.set(), p.x, p.v);
  Eigen::MatrixXd jac = ge.smooth().jacobian(p.x);
  if (flavor == BundleFlavor::Dual) jac.transposeInPlace();
  const TransformMatrix t(sum_transform(jac));

  DerivativeBundle out;
  out.flavor = flavor;
  out.point_x = p.x;
  out.point_y = p.y;
  out.members.reserve(base.members.size());
  for (const auto& member : base.members) {
    BundleMember mapped;
    mapped.subspace = transform(member.subspace, t);
    mapped.face_active = member.face_active;
    mapped.face_dim = member.face_dim;
    out.members.push_back(std::move(mapped));
  }
  return out;
}

DerivativeBundle lift_jacobians(const std::vector<Eigen::MatrixXd>& jacobians,
                                BundleFlavor flavor) {
  if (jacobians.empty()) throw EmptyBundle("lift_jacobians: no matrices given");
  const Eigen::Index n = jacobians.front().rows();

  DerivativeBundle out;
  out.flavor = flavor;
  for (const auto& a : jacobians) {
    if (a.rows() != n || a.cols() != n)
      throw DimensionMismatch("lift_jacobians: matrices must be square of equal size");
    Eigen::MatrixXd basis(2 * n, n);
    basis.topRows(n) = Eigen::MatrixXd::Identity(n, n);
    if (flavor == BundleFlavor::Primal)
      basis.bottomRows(n) = a;
    else
      basis.bottomRows(n) = a.transpose();
    BundleMember member;
    member.subspace = from_basis(basis);
    bool dup = false;
    for (const auto& existing : out.members)
      if (existing.subspace == member.subspace) dup = true;
    if (!dup) out.members.push_back(std::move(member));
  }
  return out;
}

}  // namespace scd
