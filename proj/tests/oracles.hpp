#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here is computed from first principles (hand formulas, brute force over
// small index sets, finite differences) so library results can be checked
// against values that do not flow through the code under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "scd/generalized_equation.hpp"
#include "scd/polyhedral.hpp"
#include "scd/subspace.hpp"

namespace testutil {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// The wedge cone {x : -x1/2 <= x2 <= x1/2}, written as Ax <= 0.
inline scd::PolyhedralSet wedge_set() {
  MatrixXd a(2, 2);
  a << -0.5, 1.0, -0.5, -1.0;
  return scd::PolyhedralSet(2, a, VectorXd::Zero(2));
}

// The canonical test problem: f(x) = (x1, -x2) over the wedge.
inline scd::GeneralizedEquation wedge_problem(const VectorXd& y_target = VectorXd::Zero(2)) {
  MatrixXd m(2, 2);
  m << 1, 0, 0, -1;
  return scd::GeneralizedEquation(scd::SmoothMap::affine(m, VectorXd::Zero(2)), wedge_set(),
                                  y_target);
}

// Closed-form solution set of y in f(x) + N_C(x) for the wedge problem,
// derived by solving the four activity patterns by hand. Regions overlap
// on their boundaries, so the union is collected and deduplicated.
inline std::vector<Eigen::Vector2d> wedge_inverse(const Eigen::Vector2d& y) {
  const double y1 = y(0), y2 = y(1);
  const Eigen::Vector2d z1(4.0 / 3.0 * y1 + 2.0 / 3.0 * y2, 2.0 / 3.0 * y1 + 1.0 / 3.0 * y2);
  const Eigen::Vector2d z2(y1, -y2);
  const Eigen::Vector2d z3(4.0 / 3.0 * y1 - 2.0 / 3.0 * y2, -2.0 / 3.0 * y1 + 1.0 / 3.0 * y2);
  const Eigen::Vector2d z4(0.0, 0.0);

  std::vector<Eigen::Vector2d> out;
  auto push = [&out](const Eigen::Vector2d& z) {
    for (const auto& w : out)
      if ((w - z).norm() <= 1e-12) return;
    out.push_back(z);
  };
  if (-0.5 * y1 + y2 > 0 && 2 * y1 + y2 >= 0) push(z1);
  if (-0.5 * y1 + y2 <= 0 && -0.5 * y1 - y2 <= 0) {
    push(z1);
    push(z2);
    push(z3);
  }
  if (-0.5 * y1 - y2 > 0 && 2 * y1 - y2 >= 0) push(z3);
  if (2 * y1 + y2 <= 0 && 2 * y1 - y2 <= 0) push(z4);
  return out;
}

// The four dual bundle members of the wedge problem at the origin, in
// bundle order (whole cone, upper edge, lower edge, apex), parametrized
// exactly as the hand calculation gives them.
inline std::vector<MatrixXd> wedge_dual_bases() {
  std::vector<MatrixXd> zs(4, MatrixXd(4, 2));
  zs[0] << 1, 0, 0, 1, 1, 0, 0, -1;           // ((u,v),(u,-v))
  zs[1] << 1, 0, 0.5, 0, 1, -0.5, -0.5, 1;    // ((u,u/2),(u-v/2,-u/2+v))
  zs[2] << 1, 0, -0.5, 0, 1, 0.5, 0.5, 1;     // ((u,-u/2),(u+v/2,u/2+v))
  zs[3] << 0, 0, 0, 0, 1, 0, 0, 1;            // {0} x R^2
  return zs;
}

// Normal-cone bundle members at the origin before the smooth part is
// folded in, same order.
inline std::vector<MatrixXd> wedge_cone_bases() {
  std::vector<MatrixXd> zs(4, MatrixXd(4, 2));
  zs[0] << 1, 0, 0, 1, 0, 0, 0, 0;            // R^2 x {0}
  zs[1] << 1, 0, 0.5, 0, 0, -0.5, 0, 1;       // ((u,u/2),(-v/2,v))
  zs[2] << 1, 0, -0.5, 0, 0, 0.5, 0, 1;       // ((u,-u/2),(v/2,v))
  zs[3] << 0, 0, 0, 0, 1, 0, 0, 1;            // {0} x R^2
  return zs;
}

inline std::vector<MatrixXd> wedge_c_matrices() {
  std::vector<MatrixXd> cs(4, MatrixXd(2, 2));
  cs[0] << 1, 0, 0, -1;
  cs[1] << 4.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0;
  cs[2] << 4.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0;
  cs[3] << 0, 0, 0, 0;
  return cs;
}

inline std::vector<double> wedge_c_norms() { return {1.0, 5.0 / 3.0, 5.0 / 3.0, 0.0}; }

// Projection onto {x : Ax <= b, Ex = e} by enumerating candidate active
// sets: for each subset J of inequality rows, minimize ||z - x|| subject
// to A_J z = b_J and Ez = e, then keep the best feasible candidate. The
// true projection shows up as the subset of its own active rows, so the
// minimum over feasible candidates is exact.
inline VectorXd brute_force_project(const scd::PolyhedralSet& set, const VectorXd& x) {
  const MatrixXd& a = set.ineq_matrix();
  const VectorXd& b = set.ineq_rhs();
  const MatrixXd& e = set.eq_matrix();
  const VectorXd& erhs = set.eq_rhs();
  const int m = static_cast<int>(a.rows());
  const int me = static_cast<int>(e.rows());

  VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (long mask = 0; mask < (1L << m); ++mask) {
    const int k = __builtin_popcountl(static_cast<unsigned long>(mask));
    MatrixXd rows(k + me, set.dim());
    VectorXd rhs(k + me);
    int r = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1L << i)) {
        rows.row(r) = a.row(i);
        rhs(r++) = b(i);
      }
    rows.bottomRows(me) = e;
    rhs.tail(me) = erhs;

    VectorXd z;
    if (r + me == 0) {
      z = x;
    } else {
      // Lagrange system: z = x - rows' * lambda, rows * z = rhs.
      Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(rows * rows.transpose());
      const VectorXd lambda = cod.solve(rows * x - rhs);
      z = x - rows.transpose() * lambda;
      if ((rows * z - rhs).cwiseAbs().maxCoeff() > 1e-8) continue;  // inconsistent subset
    }
    if (!set.contains(z, 1e-8)) continue;
    const double d = (z - x).norm();
    if (d < best_dist - 1e-14) {
      best_dist = d;
      best = z;
    }
  }
  return best;
}

// Central finite differences of a smooth map.
inline MatrixXd fd_jacobian(const scd::SmoothMap& f, const VectorXd& x, double h = 1e-6) {
  const int n = static_cast<int>(x.size());
  MatrixXd j(n, n);
  for (int k = 0; k < n; ++k) {
    VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    j.col(k) = (f(xp) - f(xm)) / (2 * h);
  }
  return j;
}

inline MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss;
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

inline scd::Subspace random_subspace(std::mt19937_64& rng, int n) {
  for (;;) {
    try {
      return scd::from_basis(random_matrix(rng, 2 * n, n));
    } catch (const scd::RankDeficient&) {
      // essentially impossible for Gaussian entries; retry regardless
    }
  }
}

// A subspace guaranteed to carry a C matrix.
inline scd::Subspace random_regular_subspace(std::mt19937_64& rng, int n) {
  MatrixXd z(2 * n, n);
  z.topRows(n) = random_matrix(rng, n, n);
  z.bottomRows(n) = MatrixXd::Identity(n, n);
  return scd::from_basis(z);
}

// A nonempty random polyhedron: constraints are generated around a known
// interior point so construction never fails.
inline scd::PolyhedralSet random_polyhedron(std::mt19937_64& rng, int n, int m) {
  const MatrixXd a = random_matrix(rng, m, n);
  const VectorXd x0 = random_vector(rng, n);
  std::uniform_real_distribution<double> slack(0.1, 1.5);
  VectorXd b = a * x0;
  for (int i = 0; i < m; ++i) b(i) += slack(rng);
  return scd::PolyhedralSet(n, a, b);
}

// A random cone through the origin, as a set with b = 0.
inline scd::PolyhedralSet random_cone_set(std::mt19937_64& rng, int n, int m) {
  return scd::PolyhedralSet(n, random_matrix(rng, m, n), VectorXd::Zero(m));
}

// Recovers B from a subspace of the form rge(B, I - B).
inline MatrixXd projector_part(const scd::Subspace& l) {
  const MatrixXd u = l.upper(), v = l.lower();
  return u * (u + v).inverse();
}

inline bool same_member_sets(const std::vector<scd::BundleMember>& lhs,
                             const std::vector<scd::BundleMember>& rhs, double tol) {
  if (lhs.size() != rhs.size()) return false;
  std::vector<bool> used(rhs.size(), false);
  for (const auto& a : lhs) {
    bool hit = false;
    for (size_t j = 0; j < rhs.size(); ++j) {
      if (used[j]) continue;
      if (scd::distance(a.subspace, rhs[j].subspace) <= tol) {
        used[j] = true;
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace testutil
