#include "scd/detail/small_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scd/errors.hpp"
#include "scd/tolerances.hpp"

namespace scd::detail {

int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol::rank * sv(0)) ++r;
  return r;
}

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv(0) > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol::rank * sv(0)) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m) {
  const int r = numeric_rank(m);
  if (r == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), r);
  return q;
}

NnlsResult nnls(const Eigen::MatrixXd& g, const Eigen::VectorXd& c) {
  const Eigen::Index k = g.cols();
  NnlsResult out;
  out.coeffs = Eigen::VectorXd::Zero(k);
  if (k == 0) {
    out.residual = c.norm();
    return out;
  }

  std::vector<bool> passive(k, false);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd resid = c;
  const double wtol = 1e-11 * std::max(1.0, c.norm());

  auto solve_passive = [&](std::vector<Eigen::Index>& idx) {
    idx.clear();
    for (Eigen::Index j = 0; j < k; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd gp(g.rows(), static_cast<Eigen::Index>(idx.size()));
    for (size_t t = 0; t < idx.size(); ++t) gp.col(static_cast<Eigen::Index>(t)) = g.col(idx[t]);
    return gp.completeOrthogonalDecomposition().solve(c).eval();
  };

  std::vector<Eigen::Index> idx;
  const int outer_cap = static_cast<int>(3 * k) + 10;
  for (int outer = 0; outer < outer_cap; ++outer) {
    Eigen::VectorXd w = g.transpose() * resid;
    Eigen::Index best = -1;
    double best_w = wtol;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < static_cast<int>(2 * k) + 10; ++inner) {
      Eigen::VectorXd z = solve_passive(idx);
      bool all_pos = true;
      for (size_t t = 0; t < idx.size(); ++t)
        if (z(static_cast<Eigen::Index>(t)) <= 0.0) all_pos = false;
      if (all_pos) {
        for (size_t t = 0; t < idx.size(); ++t) x(idx[t]) = z(static_cast<Eigen::Index>(t));
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (size_t t = 0; t < idx.size(); ++t) {
        const double zt = z(static_cast<Eigen::Index>(t));
        if (zt <= 0.0) {
          const double xt = x(idx[t]);
          alpha = std::min(alpha, xt / (xt - zt));
        }
      }
      if (!std::isfinite(alpha)) alpha = 0.0;
      for (size_t t = 0; t < idx.size(); ++t) {
        const Eigen::Index j = idx[t];
        x(j) += alpha * (z(static_cast<Eigen::Index>(t)) - x(j));
        if (x(j) <= 1e-14) {
          x(j) = 0.0;
          passive[j] = false;
        }
      }
    }
    resid = c - g * x;
  }

  out.coeffs = x;
  out.residual = (c - g * x).norm();
  return out;
}

namespace {

// Dense phase-I tableau simplex with Bland's rule. Minimizes the sum of
// artificial variables for the system rows * v = rhs, v >= 0.
struct Tableau {
  Eigen::MatrixXd t;            // m x (cols + 1), last column is rhs
  std::vector<int> basis;       // basic variable per row
  Eigen::RowVectorXd obj;       // reduced costs, cols + 1 entries (last = -objective)
};

}  // namespace

FeasibilityResult lp_feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                    const Eigen::MatrixXd& e_mat, const Eigen::VectorXd& e_rhs) {
  const Eigen::Index n = std::max(a.cols(), e_mat.cols());
  const Eigen::Index mi = a.rows();
  const Eigen::Index me = e_mat.rows();
  const Eigen::Index m = mi + me;

  FeasibilityResult out;
  if (m == 0) {
    out.feasible = true;
    out.point = Eigen::VectorXd::Zero(n);
    return out;
  }

  // Variables: x+ (n), x- (n), slack (mi), artificial (m).
  const Eigen::Index nv = 2 * n + mi;
  const Eigen::Index cols = nv + m;

  Eigen::MatrixXd rows(m, nv);
  Eigen::VectorXd rhs(m);
  rows.setZero();
  for (Eigen::Index i = 0; i < mi; ++i) {
    rows.block(i, 0, 1, n) = a.row(i);
    rows.block(i, n, 1, n) = -a.row(i);
    rows(i, 2 * n + i) = 1.0;
    rhs(i) = b(i);
  }
  for (Eigen::Index i = 0; i < me; ++i) {
    rows.block(mi + i, 0, 1, n) = e_mat.row(i);
    rows.block(mi + i, n, 1, n) = -e_mat.row(i);
    rhs(mi + i) = e_rhs(i);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rhs(i) < 0.0) {
      rows.row(i) = -rows.row(i);
      rhs(i) = -rhs(i);
    }
  }

  Tableau tb;
  tb.t = Eigen::MatrixXd::Zero(m, cols + 1);
  tb.t.leftCols(nv) = rows;
  tb.t.block(0, nv, m, m) = Eigen::MatrixXd::Identity(m, m);
  tb.t.col(cols) = rhs;
  tb.basis.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) tb.basis[i] = static_cast<int>(nv + i);

  // Phase-I objective: minimize the artificial sum. Reduced costs start as
  // the negated column sums over all rows (artificials price to zero).
  tb.obj = Eigen::RowVectorXd::Zero(cols + 1);
  for (Eigen::Index j = 0; j < nv; ++j) tb.obj(j) = -tb.t.col(j).sum();
  tb.obj(cols) = -rhs.sum();

  const double pivot_tol = 1e-11;
  const int iter_cap = 20000;
  for (int iter = 0; iter < iter_cap; ++iter) {
    // Bland: first column with negative reduced cost.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (tb.obj(j) < -1e-10) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double pij = tb.t(i, enter);
      if (pij > pivot_tol) {
        const double ratio = tb.t(i, cols) / pij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || tb.basis[i] < tb.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded column; cannot happen in phase I

    tb.t.row(leave) /= tb.t(leave, enter);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != leave && std::abs(tb.t(i, enter)) > 0.0)
        tb.t.row(i) -= tb.t(i, enter) * tb.t.row(leave);
    }
    tb.obj -= tb.obj(enter) * tb.t.row(leave);
    tb.basis[leave] = static_cast<int>(enter);
  }

  const double objective = -tb.obj(cols);
  if (objective > 1e-9) {
    out.feasible = false;
    return out;
  }

  Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index i = 0; i < m; ++i)
    if (tb.basis[i] < cols) v(tb.basis[i]) = tb.t(i, cols);
  out.feasible = true;
  out.point = v.head(n) - v.segment(n, n);
  return out;
}

}  // namespace scd::detail
