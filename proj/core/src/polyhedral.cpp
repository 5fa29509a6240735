#include "scd/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>

#include "scd/detail/small_solvers.hpp"

namespace scd {

namespace {

constexpr int kMaxDim = 12;
constexpr int kMaxRows = 16;

// Normalizes rows to unit norm in place; returns indices of zero rows.
std::vector<Eigen::Index> normalize_rows(Eigen::MatrixXd& m, Eigen::VectorXd& rhs) {
  std::vector<Eigen::Index> zero;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double nrm = m.row(i).norm();
    if (nrm <= 1e-14) {
      zero.push_back(i);
    } else if (std::abs(nrm - 1.0) > 1e-12) {
      // rows within an ulp of unit length are kept verbatim so that
      // serialized sets parse back bit for bit
      m.row(i) /= nrm;
      rhs(i) /= nrm;
    }
  }
  return zero;
}

Eigen::MatrixXd drop_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& kill) {
  if (kill.empty()) return m;
  Eigen::MatrixXd out(m.rows() - static_cast<Eigen::Index>(kill.size()), m.cols());
  Eigen::Index w = 0;
  size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (k < kill.size() && kill[k] == i) {
      ++k;
      continue;
    }
    out.row(w++) = m.row(i);
  }
  return out;
}

Eigen::VectorXd drop_entries(const Eigen::VectorXd& v, const std::vector<Eigen::Index>& kill) {
  if (kill.empty()) return v;
  Eigen::VectorXd out(v.size() - static_cast<Eigen::Index>(kill.size()));
  Eigen::Index w = 0;
  size_t k = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (k < kill.size() && kill[k] == i) {
      ++k;
      continue;
    }
    out(w++) = v(i);
  }
  return out;
}

}  // namespace

PolyhedralSet::PolyhedralSet(int n, Eigen::MatrixXd a, Eigen::VectorXd b)
    : PolyhedralSet(n, std::move(a), std::move(b), Eigen::MatrixXd(0, n), Eigen::VectorXd(0)) {}

PolyhedralSet::PolyhedralSet(int n, Eigen::MatrixXd a, Eigen::VectorXd b,
                             Eigen::MatrixXd e_mat, Eigen::VectorXd e_rhs)
    : n_(n), a_(std::move(a)), b_(std::move(b)), e_(std::move(e_mat)), erhs_(std::move(e_rhs)) {
  if (n_ < 1) throw DimensionMismatch("PolyhedralSet: dimension must be positive");
  if (a_.rows() != b_.size() || (a_.rows() > 0 && a_.cols() != n_))
    throw DimensionMismatch("PolyhedralSet: inequality shapes disagree");
  if (e_.rows() != erhs_.size() || (e_.rows() > 0 && e_.cols() != n_))
    throw DimensionMismatch("PolyhedralSet: equality shapes disagree");
  if (a_.cols() != n_) a_.resize(a_.rows(), n_);
  if (e_.cols() != n_) e_.resize(e_.rows(), n_);
  normalize_and_check();
}

void PolyhedralSet::normalize_and_check() {
  auto zero_a = normalize_rows(a_, b_);
  for (const auto i : zero_a) {
    if (b_(i) < 0.0)
      throw InfeasibleSet("PolyhedralSet: zero inequality row with negative bound");
  }
  a_ = drop_rows(a_, zero_a);
  b_ = drop_entries(b_, zero_a);

  auto zero_e = normalize_rows(e_, erhs_);
  for (const auto i : zero_e) {
    if (erhs_(i) != 0.0)
      throw InfeasibleSet("PolyhedralSet: zero equality row with nonzero value");
  }
  e_ = drop_rows(e_, zero_e);
  erhs_ = drop_entries(erhs_, zero_e);

  if ((b_.size() == 0 || b_.minCoeff() >= 0.0) &&
      (erhs_.size() == 0 || erhs_.cwiseAbs().maxCoeff() == 0.0)) {
    feasible_ = Eigen::VectorXd::Zero(n_);
    return;
  }
  auto feas = detail::lp_feasible_point(a_, b_, e_, erhs_);
  if (!feas.feasible) throw InfeasibleSet("PolyhedralSet: constraint system has no solution");
  feasible_ = feas.point;
}

PolyhedralSet PolyhedralSet::whole_space(int n) {
  return PolyhedralSet(n, Eigen::MatrixXd(0, n), Eigen::VectorXd(0));
}

bool PolyhedralSet::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != n_) throw DimensionMismatch("PolyhedralSet::contains: bad vector length");
  if (a_.rows() > 0 && ((a_ * x - b_).maxCoeff() > tol)) return false;
  if (e_.rows() > 0 && ((e_ * x - erhs_).cwiseAbs().maxCoeff() > tol)) return false;
  return true;
}

std::vector<int> PolyhedralSet::active_rows(const Eigen::VectorXd& x, double tol) const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < a_.rows(); ++i)
    if (std::abs(a_.row(i).dot(x) - b_(i)) <= tol) out.push_back(static_cast<int>(i));
  return out;
}

PolyhedralCone::PolyhedralCone(int n, Eigen::MatrixXd a_ineq, Eigen::MatrixXd a_eq)
    : n_(n), ineq_(std::move(a_ineq)), eq_(std::move(a_eq)) {
  if (n_ < 1) throw DimensionMismatch("PolyhedralCone: dimension must be positive");
  if (ineq_.size() == 0) ineq_.resize(0, n_);
  if (eq_.size() == 0) eq_.resize(0, n_);
  if (ineq_.cols() != n_ || eq_.cols() != n_)
    throw DimensionMismatch("PolyhedralCone: row width disagrees with dimension");
  Eigen::VectorXd dummy_i = Eigen::VectorXd::Zero(ineq_.rows());
  Eigen::VectorXd dummy_e = Eigen::VectorXd::Zero(eq_.rows());
  ineq_ = drop_rows(ineq_, normalize_rows(ineq_, dummy_i));
  eq_ = drop_rows(eq_, normalize_rows(eq_, dummy_e));
}

bool PolyhedralCone::contains(const Eigen::VectorXd& u, double tol) const {
  if (u.size() != n_) throw DimensionMismatch("PolyhedralCone::contains: bad vector length");
  if (ineq_.rows() > 0 && (ineq_ * u).maxCoeff() > tol) return false;
  if (eq_.rows() > 0 && (eq_ * u).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

PolyhedralSet PolyhedralCone::as_set() const {
  return PolyhedralSet(n_, ineq_, Eigen::VectorXd::Zero(ineq_.rows()), eq_,
                       Eigen::VectorXd::Zero(eq_.rows()));
}

Eigen::VectorXd project(const PolyhedralSet& set, const Eigen::VectorXd& x) {
  const int n = set.dim();
  if (x.size() != n) throw DimensionMismatch("project: bad vector length");
  const Eigen::MatrixXd& a = set.ineq_matrix();
  const Eigen::VectorXd& b = set.ineq_rhs();
  const Eigen::MatrixXd& e = set.eq_matrix();
  const Eigen::VectorXd& erhs = set.eq_rhs();
  const Eigen::Index mi = a.rows();
  const Eigen::Index me = e.rows();
  if (mi + me == 0) return x;

  double viol = 0.0;
  if (mi > 0) viol = std::max(viol, (a * x - b).maxCoeff());
  if (me > 0) viol = std::max(viol, (e * x - erhs).cwiseAbs().maxCoeff());
  Eigen::VectorXd z = viol <= 1e-14 ? x : set.feasible_point();

  std::vector<int> working;  // inequality rows held at equality
  const int cap = 100 * static_cast<int>(std::max<Eigen::Index>(1, mi + me));

  for (int iter = 0; iter < cap; ++iter) {
    const Eigen::Index k = static_cast<Eigen::Index>(working.size());
    Eigen::MatrixXd m(k + me, n);
    Eigen::VectorXd d(k + me);
    for (Eigen::Index t = 0; t < k; ++t) {
      m.row(t) = a.row(working[static_cast<size_t>(t)]);
      d(t) = b(working[static_cast<size_t>(t)]);
    }
    if (me > 0) {
      m.bottomRows(me) = e;
      d.tail(me) = erhs;
    }

    Eigen::VectorXd lambda;
    Eigen::VectorXd target;
    if (m.rows() == 0) {
      target = x;
    } else {
      lambda = (m * m.transpose())
                   .completeOrthogonalDecomposition()
                   .solve(m * x - d);
      target = x - m.transpose() * lambda;
    }

    if ((target - z).norm() <= 1e-12 * std::max(1.0, z.norm())) {
      // At the working-set minimizer. Accept or drop a constraint.
      int drop = -1;
      double most_negative = -1e-11;
      for (Eigen::Index t = 0; t < k; ++t) {
        if (lambda(t) < most_negative) {
          most_negative = lambda(t);
          drop = static_cast<int>(t);
        }
      }
      if (drop < 0) return target;
      working.erase(working.begin() + drop);
      continue;
    }

    // Step toward the working-set minimizer until a new row blocks.
    const Eigen::VectorXd dir = target - z;
    double alpha = 1.0;
    int blocker = -1;
    for (Eigen::Index j = 0; j < mi; ++j) {
      if (std::find(working.begin(), working.end(), static_cast<int>(j)) != working.end())
        continue;
      const double denom = a.row(j).dot(dir);
      if (denom > 1e-13) {
        double room = (b(j) - a.row(j).dot(z)) / denom;
        if (room < 0.0) room = 0.0;
        if (room < alpha - 1e-15) {
          alpha = room;
          blocker = static_cast<int>(j);
        }
      }
    }
    z += alpha * dir;
    if (blocker >= 0) {
      working.insert(std::upper_bound(working.begin(), working.end(), blocker), blocker);
    }
  }
  throw QPFailure("project: active-set iteration cap exceeded");
}

bool is_normal_at(const PolyhedralSet& set, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& xstar) {
  if (xstar.size() != set.dim()) throw DimensionMismatch("is_normal_at: bad vector length");
  if (!set.contains(x)) throw PointNotInSet("is_normal_at: x is not in the set");
  const double scale = std::max(1.0, xstar.norm());
  if (xstar.norm() <= 1e-14) return true;

  const auto act = set.active_rows(x);
  const Eigen::Index me = set.eq_matrix().rows();
  Eigen::MatrixXd g(set.dim(), static_cast<Eigen::Index>(act.size()) + 2 * me);
  Eigen::Index col = 0;
  for (const int i : act) g.col(col++) = set.ineq_matrix().row(i).transpose();
  for (Eigen::Index j = 0; j < me; ++j) {
    g.col(col++) = set.eq_matrix().row(j).transpose();
    g.col(col++) = -set.eq_matrix().row(j).transpose();
  }
  const auto fit = detail::nnls(g.leftCols(col), xstar);
  return fit.residual <= tol::normal_residual * scale;
}

PolyhedralCone tangent_cone(const PolyhedralSet& set, const Eigen::VectorXd& x) {
  if (!set.contains(x)) throw PointNotInSet("tangent_cone: x is not in the set");
  const auto act = set.active_rows(x);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(act.size()), set.dim());
  for (size_t t = 0; t < act.size(); ++t)
    rows.row(static_cast<Eigen::Index>(t)) = set.ineq_matrix().row(act[t]);
  return PolyhedralCone(set.dim(), rows, set.eq_matrix());
}

PolyhedralCone critical_cone(const PolyhedralSet& set, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& xstar) {
  if (xstar.size() != set.dim()) throw DimensionMismatch("critical_cone: bad vector length");
  if (!is_normal_at(set, x, xstar))
    throw NotANormal("critical_cone: xstar is not a normal to the set at x");
  const PolyhedralCone tangent = tangent_cone(set, x);
  if (xstar.norm() <= 1e-13) return tangent;
  Eigen::MatrixXd eq(tangent.equalities().rows() + 1, set.dim());
  if (tangent.equalities().rows() > 0) eq.topRows(tangent.equalities().rows()) = tangent.equalities();
  eq.bottomRows(1) = (xstar / xstar.norm()).transpose();
  return PolyhedralCone(set.dim(), tangent.inequalities(), eq);
}

GeneratorSet cone_generators(const PolyhedralCone& cone) {
  const int n = cone.dim();
  const Eigen::Index mi = cone.inequalities().rows();
  const Eigen::Index me = cone.equalities().rows();
  if (n > kMaxDim)
    throw ScaleLimitExceeded("cone_generators: dimension exceeds the supported limit");
  if (mi > kMaxRows)
    throw ScaleLimitExceeded("cone_generators: too many inequality rows to enumerate");

  Eigen::MatrixXd stacked(mi + me, n);
  if (mi > 0) stacked.topRows(mi) = cone.inequalities();
  if (me > 0) stacked.bottomRows(me) = cone.equalities();

  GeneratorSet out;
  out.lineality = detail::null_space_basis(stacked);
  const Eigen::Index l = out.lineality.cols();

  std::vector<Eigen::VectorXd> rays;
  const std::uint32_t total = mi >= 1 ? (1u << mi) : 1u;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const int sz = static_cast<int>(__builtin_popcount(mask));
    // rank([A_J; E]) must reach n - l - 1, so tiny subsets cannot work.
    if (sz + static_cast<int>(me) < n - static_cast<int>(l) - 1) continue;

    Eigen::MatrixXd sub(sz + me, n);
    Eigen::Index w = 0;
    for (Eigen::Index i = 0; i < mi; ++i)
      if (mask & (1u << i)) sub.row(w++) = cone.inequalities().row(i);
    if (me > 0) sub.bottomRows(me) = cone.equalities();

    const Eigen::MatrixXd null = detail::null_space_basis(sub);
    if (null.cols() != l + 1) continue;

    // The fresh direction modulo the lineality space.
    Eigen::MatrixXd off = null;
    if (l > 0) off -= out.lineality * (out.lineality.transpose() * null);
    const Eigen::MatrixXd dir = detail::range_basis(off);
    if (dir.cols() != 1) continue;
    Eigen::VectorXd v = dir.col(0);

    const double tol_ray = 1e-9;
    const bool fwd = mi == 0 || (cone.inequalities() * v).maxCoeff() <= tol_ray;
    const bool bwd = mi == 0 || (cone.inequalities() * (-v)).maxCoeff() <= tol_ray;
    if (!fwd && !bwd) continue;
    if (!fwd) v = -v;

    bool dup = false;
    for (const auto& r : rays)
      if ((r - v).norm() <= 1e-8) dup = true;
    if (!dup) rays.push_back(std::move(v));
  }

  out.rays.resize(n, static_cast<Eigen::Index>(rays.size()));
  for (size_t t = 0; t < rays.size(); ++t) out.rays.col(static_cast<Eigen::Index>(t)) = rays[t];
  return out;
}

std::vector<Face> faces(const PolyhedralCone& cone) {
  const int n = cone.dim();
  const Eigen::Index mi = cone.inequalities().rows();
  const GeneratorSet gens = cone_generators(cone);
  const Eigen::Index p = gens.rays.cols();

  // Incidence of each ray with the inequality rows.
  std::vector<std::uint32_t> zero_set(static_cast<size_t>(p), 0);
  for (Eigen::Index r = 0; r < p; ++r) {
    for (Eigen::Index i = 0; i < mi; ++i)
      if (std::abs(cone.inequalities().row(i).dot(gens.rays.col(r))) <= 1e-9)
        zero_set[static_cast<size_t>(r)] |= (1u << i);
  }

  // A face is determined by the set of rays it keeps; enumerate the row
  // subsets and dedupe on that set.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> ray_subsets;
  const std::uint32_t total = mi >= 1 ? (1u << mi) : 1u;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<int> keep;
    for (Eigen::Index r = 0; r < p; ++r)
      if ((mask & ~zero_set[static_cast<size_t>(r)]) == 0) keep.push_back(static_cast<int>(r));
    if (seen.insert(keep).second) ray_subsets.push_back(std::move(keep));
  }

  std::vector<Face> out;
  out.reserve(ray_subsets.size());
  for (const auto& keep : ray_subsets) {
    Face f;
    std::uint32_t common = mi >= 1 ? (1u << mi) - 1u : 0u;
    for (const int r : keep) common &= zero_set[static_cast<size_t>(r)];
    for (Eigen::Index i = 0; i < mi; ++i)
      if (common & (1u << i)) f.active.push_back(static_cast<int>(i));

    f.generators.lineality = gens.lineality;
    f.generators.rays.resize(n, static_cast<Eigen::Index>(keep.size()));
    for (size_t t = 0; t < keep.size(); ++t)
      f.generators.rays.col(static_cast<Eigen::Index>(t)) = gens.rays.col(keep[t]);

    Eigen::MatrixXd span(n, gens.lineality.cols() + f.generators.rays.cols());
    span << gens.lineality, f.generators.rays;
    f.span_basis = span.cols() == 0 ? Eigen::MatrixXd(n, 0) : detail::range_basis(span);
    out.push_back(std::move(f));
  }

  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.span_dim() != b.span_dim()) return a.span_dim() > b.span_dim();
    return a.active < b.active;
  });
  return out;
}

DerivativeBundle sp_star_normal_cone(const PolyhedralSet& set, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& xstar) {
  const int n = set.dim();
  const PolyhedralCone crit = critical_cone(set, x, xstar);
  const std::vector<Face> fs = faces(crit);

  DerivativeBundle bundle;
  bundle.flavor = BundleFlavor::Dual;
  bundle.point_x = x;
  bundle.point_y = xstar;
  bundle.members.reserve(fs.size());
  for (const auto& f : fs) {
    const Eigen::MatrixXd b = f.span_basis * f.span_basis.transpose();
    Eigen::MatrixXd basis(2 * n, n);
    basis.topRows(n) = b;
    basis.bottomRows(n) = Eigen::MatrixXd::Identity(n, n) - b;
    BundleMember member;
    member.subspace = from_basis(basis);
    member.face_active = f.active;
    member.face_dim = f.span_dim();
    bundle.members.push_back(std::move(member));
  }
  return bundle;
}

}  // namespace scd
