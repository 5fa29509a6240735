#include <random>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "scd/generalized_equation.hpp"

using namespace scd;
using testutil::fd_jacobian;
using testutil::random_matrix;
using testutil::random_vector;
using testutil::same_member_sets;
using testutil::wedge_problem;
using testutil::wedge_set;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("graph points validate both memberships") {
  const GeneralizedEquation ge = wedge_problem();
  const GraphPoint origin = graph_point(ge, vec2(0, 0), vec2(0, 0));
  CHECK(origin.y.norm() == 0.0);

  const GraphPoint interior = graph_point(ge, vec2(2, 0.1), vec2(0, 0));
  CHECK((interior.y - vec2(2, -0.1)).norm() < 1e-14);

  CHECK_THROWS_AS(graph_point(ge, vec2(-1, 0), vec2(0, 0)), PointNotInSet);
  CHECK_THROWS_AS(graph_point(ge, vec2(0, 0), vec2(1, 0)), NotANormal);
}

TEST_CASE("graph points fold the target shift into y") {
  const GeneralizedEquation ge = wedge_problem(vec2(1, 0.25));
  const GraphPoint p = graph_point(ge, vec2(1.5, 0.75), vec2(0, 0));
  // f(x) - y_target = (1.5 - 1, -0.75 - 0.25): a solution has y = 0 only
  // when the normal component cancels it; here v = 0 on the upper edge
  CHECK((p.y - vec2(0.5, -1.0)).norm() < 1e-14);
}

TEST_CASE("the wedge problem bundle at the origin") {
  const GeneralizedEquation ge = wedge_problem();
  const GraphPoint p = graph_point(ge, vec2(0, 0), vec2(0, 0));
  const DerivativeBundle dual = bundle_at(ge, p, BundleFlavor::Dual);
  const auto expected = testutil::wedge_dual_bases();
  REQUIRE(dual.members.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    CHECK(distance(dual.members[i].subspace, from_basis(expected[i])) < 1e-9);
}

TEST_CASE("named nonlinearities share the origin bundle with their linear part") {
  const PolyhedralSet c = wedge_set();
  const GeneralizedEquation affine = wedge_problem();
  const GeneralizedEquation sine(SmoothMap::named("saddle_sine", 2), c, VectorXd::Zero(2));
  const GraphPoint pa = graph_point(affine, vec2(0, 0), vec2(0, 0));
  const GraphPoint ps = graph_point(sine, vec2(0, 0), vec2(0, 0));
  for (BundleFlavor flavor : {BundleFlavor::Primal, BundleFlavor::Dual}) {
    const DerivativeBundle ba = bundle_at(affine, pa, flavor);
    const DerivativeBundle bs = bundle_at(sine, ps, flavor);
    CHECK(same_member_sets(ba.members, bs.members, 1e-9));
  }
}

TEST_CASE("a zero map leaves the normal cone bundle unchanged") {
  const PolyhedralSet c = wedge_set();
  const GeneralizedEquation ge(SmoothMap::named("zero", 2), c, VectorXd::Zero(2));
  const GraphPoint p = graph_point(ge, vec2(0, 0), vec2(0, 0));
  const DerivativeBundle lifted = bundle_at(ge, p, BundleFlavor::Dual);
  const DerivativeBundle base = sp_star_normal_cone(c, vec2(0, 0), vec2(0, 0));
  REQUIRE(lifted.members.size() == base.members.size());
  for (size_t i = 0; i < base.members.size(); ++i)
    CHECK(distance(lifted.members[i].subspace, base.members[i].subspace) < 1e-12);
}

TEST_CASE("bundles obey the smooth sum rule") {
  std::mt19937_64 rng(211);
  const PolyhedralSet c = wedge_set();
  const GeneralizedEquation base(SmoothMap::named("zero", 2), c, VectorXd::Zero(2));
  const GraphPoint p0 = graph_point(base, vec2(0, 0), vec2(0, 0));

  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd m = random_matrix(rng, 2, 2);
    const GeneralizedEquation ge(SmoothMap::affine(m, random_vector(rng, 2)), c,
                                 VectorXd::Zero(2));
    // v = 0 keeps x = 0 a graph point regardless of the affine part
    const GraphPoint p = graph_point(ge, vec2(0, 0), vec2(0, 0));
    for (BundleFlavor flavor : {BundleFlavor::Primal, BundleFlavor::Dual}) {
      const MatrixXd jac = flavor == BundleFlavor::Primal ? m : MatrixXd(m.transpose());
      const TransformMatrix t(sum_transform(jac));
      DerivativeBundle pushed = bundle_at(base, p0, flavor);
      for (auto& member : pushed.members) member.subspace = transform(member.subspace, t);
      const DerivativeBundle direct = bundle_at(ge, p, flavor);
      CHECK(same_member_sets(direct.members, pushed.members, 1e-9));
    }
  }
}

TEST_CASE("bundles ignore the constant target shift") {
  std::mt19937_64 rng(223);
  const GeneralizedEquation plain = wedge_problem();
  const GeneralizedEquation shifted = wedge_problem(vec2(-3, 0.7));
  const GraphPoint pp = graph_point(plain, vec2(0, 0), vec2(0, 0));
  const GraphPoint ps = graph_point(shifted, vec2(0, 0), vec2(0, 0));
  const DerivativeBundle a = bundle_at(plain, pp, BundleFlavor::Dual);
  const DerivativeBundle b = bundle_at(shifted, ps, BundleFlavor::Dual);
  REQUIRE(a.members.size() == b.members.size());
  for (size_t i = 0; i < a.members.size(); ++i)
    CHECK(distance(a.members[i].subspace, b.members[i].subspace) == 0.0);
}

TEST_CASE("primal and dual bundles are adjoint families") {
  std::mt19937_64 rng(227);
  const PolyhedralSet c = wedge_set();
  for (int trial = 0; trial < 20; ++trial) {
    const GeneralizedEquation ge(SmoothMap::affine(random_matrix(rng, 2, 2), VectorXd::Zero(2)),
                                 c, VectorXd::Zero(2));
    const GraphPoint p = graph_point(ge, vec2(0, 0), vec2(0, 0));
    DerivativeBundle primal = bundle_at(ge, p, BundleFlavor::Primal);
    const DerivativeBundle dual = bundle_at(ge, p, BundleFlavor::Dual);
    for (auto& member : primal.members) member.subspace = adjoint(member.subspace);
    CHECK(same_member_sets(primal.members, dual.members, 1e-9));
  }
}

TEST_CASE("jacobian lifts build graph subspaces") {
  SUBCASE("a single matrix") {
    std::mt19937_64 rng(229);
    const MatrixXd a = random_matrix(rng, 3, 3);
    const DerivativeBundle bundle = lift_jacobians({a}, BundleFlavor::Primal);
    REQUIRE(bundle.members.size() == 1);
    MatrixXd z(6, 3);
    z.topRows(3).setIdentity();
    z.bottomRows(3) = a;
    CHECK(distance(bundle.members[0].subspace, from_basis(z)) < 1e-12);
  }
  SUBCASE("a rotation separates the flavors") {
    MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;
    const DerivativeBundle p = lift_jacobians({rot}, BundleFlavor::Primal);
    const DerivativeBundle d = lift_jacobians({rot}, BundleFlavor::Dual);
    CHECK(distance(p.members[0].subspace, d.members[0].subspace) > 0.5);
  }
  SUBCASE("the absolute value selection at the kink") {
    MatrixXd plus(1, 1), minus(1, 1);
    plus << 1;
    minus << -1;
    const DerivativeBundle bundle = lift_jacobians({plus, minus}, BundleFlavor::Primal);
    REQUIRE(bundle.members.size() == 2);
    MatrixXd z1(2, 1), z2(2, 1);
    z1 << 1, 1;
    z2 << 1, -1;
    CHECK(distance(bundle.members[0].subspace, from_basis(z1)) < 1e-12);
    CHECK(distance(bundle.members[1].subspace, from_basis(z2)) < 1e-12);
  }
  SUBCASE("duplicates are merged") {
    const MatrixXd i2 = MatrixXd::Identity(2, 2);
    CHECK(lift_jacobians({i2, i2}, BundleFlavor::Dual).members.size() == 1);
  }
  SUBCASE("shapes must agree") {
    CHECK_THROWS_AS(
        lift_jacobians({MatrixXd::Identity(2, 2), MatrixXd::Identity(3, 3)}, BundleFlavor::Dual),
        DimensionMismatch);
    CHECK_THROWS_AS(lift_jacobians({MatrixXd::Identity(2, 3)}, BundleFlavor::Dual),
                    DimensionMismatch);
  }
}

TEST_CASE("registry jacobians agree with finite differences") {
  std::mt19937_64 rng(233);
  for (const std::string& name : SmoothMap::registry_names()) {
    const bool planar = name == "saddle" || name == "saddle_sine";
    for (int n : planar ? std::vector<int>{2} : std::vector<int>{1, 3}) {
      const SmoothMap f = SmoothMap::named(name, n);
      for (int k = 0; k < 5; ++k) {
        const VectorXd x = random_vector(rng, n);
        const MatrixXd jac = f.jacobian(x);
        const MatrixXd fd = fd_jacobian(f, x);
        const double scale = std::max(1.0, jac.cwiseAbs().maxCoeff());
        CHECK((jac - fd).cwiseAbs().maxCoeff() / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("affine maps evaluate as M x + q") {
  std::mt19937_64 rng(239);
  const MatrixXd m = random_matrix(rng, 3, 3);
  const VectorXd q = random_vector(rng, 3);
  const SmoothMap f = SmoothMap::affine(m, q);
  const VectorXd x = random_vector(rng, 3);
  CHECK((f(x) - (m * x + q)).norm() == 0.0);
  CHECK((f.jacobian(x) - m).norm() == 0.0);
  CHECK((fd_jacobian(f, x) - m).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("map construction rejects bad shapes and names") {
  CHECK_THROWS_AS(SmoothMap::affine(MatrixXd::Identity(2, 3), VectorXd::Zero(2)),
                  DimensionMismatch);
  CHECK_THROWS_AS(SmoothMap::affine(MatrixXd::Identity(2, 2), VectorXd::Zero(3)),
                  DimensionMismatch);
  CHECK_THROWS_AS(SmoothMap::named("no_such_map", 2), Error);
  CHECK_THROWS_AS(SmoothMap::named("saddle", 3), DimensionMismatch);
  CHECK_THROWS_AS(GeneralizedEquation(SmoothMap::named("zero", 3), wedge_set(),
                                      VectorXd::Zero(3)),
                  DimensionMismatch);
}

TEST_CASE("the shifted map subtracts the target") {
  const GeneralizedEquation ge = wedge_problem(vec2(1, 0.25));
  CHECK((ge.shifted(vec2(1.5, 0.75)) - vec2(0.5, -1.0)).norm() < 1e-14);
}
