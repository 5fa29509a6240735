#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "scd/diagnostics.hpp"
#include "scd/generalized_equation.hpp"
#include "scd/newton.hpp"
#include "scd/polyhedral.hpp"
#include "scd/subspace.hpp"

using namespace scd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
  return m;
}

Subspace random_subspace(std::mt19937_64& rng, int n) {
  while (true) {
    try {
      return from_basis(random_matrix(rng, 2 * n, n));
    } catch (const RankDeficient&) {
    }
  }
}

GeneralizedEquation wedge_problem() {
  MatrixXd m(2, 2), a(2, 2);
  m << 1, 0, 0, -1;
  a << -0.5, 1, -0.5, -1;
  return GeneralizedEquation(SmoothMap::affine(m, VectorXd::Zero(2)),
                             PolyhedralSet(2, a, VectorXd::Zero(2)), VectorXd::Zero(2));
}

// cube with chopped corners: 2n box rows plus diagonal cuts
PolyhedralSet chopped_box(int n, int cuts, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd a(2 * n + cuts, n);
  VectorXd b(2 * n + cuts);
  a.setZero();
  for (int i = 0; i < n; ++i) {
    a(2 * i, i) = 1;
    b(2 * i) = 1;
    a(2 * i + 1, i) = -1;
    b(2 * i + 1) = 1;
  }
  for (int k = 0; k < cuts; ++k) {
    for (int j = 0; j < n; ++j) a(2 * n + k, j) = gauss(rng);
    b(2 * n + k) = 1.5;
  }
  return PolyhedralSet(n, a, b);
}

void bm_subspace_distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const Subspace l1 = random_subspace(rng, n);
  const Subspace l2 = random_subspace(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(distance(l1, l2));
}

void bm_subspace_adjoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const Subspace l = random_subspace(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(adjoint(l));
}

void bm_subspace_from_basis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const MatrixXd z = random_matrix(rng, 2 * n, n);
  for (auto _ : state) benchmark::DoNotOptimize(from_basis(z));
}

void bm_wedge_bundle(benchmark::State& state) {
  const GeneralizedEquation ge = wedge_problem();
  const GraphPoint p = graph_point(ge, VectorXd::Zero(2), VectorXd::Zero(2));
  for (auto _ : state) benchmark::DoNotOptimize(bundle_at(ge, p, BundleFlavor::Dual));
}

void bm_wedge_solve(benchmark::State& state) {
  const GeneralizedEquation ge = wedge_problem();
  VectorXd x0(2);
  x0 << 1.4, 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(solve(ge, x0));
}

void bm_wedge_analyze(benchmark::State& state) {
  const GeneralizedEquation ge = wedge_problem();
  const GraphPoint p = graph_point(ge, VectorXd::Zero(2), VectorXd::Zero(2));
  const DerivativeBundle bundle = bundle_at(ge, p, BundleFlavor::Dual);
  for (auto _ : state) benchmark::DoNotOptimize(scd_regularity(bundle));
}

void bm_project(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const PolyhedralSet set = chopped_box(n, n, rng);
  const VectorXd x = 3 * random_matrix(rng, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, x));
}

void bm_faces(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  MatrixXd a = random_matrix(rng, m, 3);
  const PolyhedralCone cone(3, a, MatrixXd::Zero(0, 3));
  for (auto _ : state) benchmark::DoNotOptimize(faces(cone));
}

BENCHMARK(bm_subspace_distance)->Arg(2)->Arg(8);
BENCHMARK(bm_subspace_adjoint)->Arg(2)->Arg(8);
BENCHMARK(bm_subspace_from_basis)->Arg(2)->Arg(8);
BENCHMARK(bm_wedge_bundle);
BENCHMARK(bm_wedge_solve);
BENCHMARK(bm_wedge_analyze);
BENCHMARK(bm_project)->Arg(2)->Arg(6);
BENCHMARK(bm_faces)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
