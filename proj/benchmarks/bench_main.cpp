#include "plateau/certificates.hpp"
#include "plateau/graphgeom.hpp"
#include "plateau/solver.hpp"
#include "plateau/symfunc.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng) + 1.0;
  return v;
}

void BM_ElementarySymmetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const plateau::CurvatureSpectrum k(random_vector(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(plateau::elementary_symmetric(n / 2, k));
}
BENCHMARK(BM_ElementarySymmetric)->Arg(2)->Arg(8)->Arg(64);

void BM_BuildFrame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  Eigen::MatrixXd d2u = Eigen::MatrixXd::Random(n, n);
  d2u = 0.5 * (d2u + d2u.transpose()).eval();
  const plateau::CurvatureJet jet(0.7, 0.3 * random_vector(rng, n), d2u);
  for (auto _ : state) benchmark::DoNotOptimize(plateau::build_frame(jet));
}
BENCHMARK(BM_BuildFrame)->Arg(2)->Arg(3);

plateau::GridSolution cap_state(int res) {
  auto grid = std::make_shared<const plateau::Discretization>(plateau::DomainSpec::ball(2, 1.0), res);
  const auto cap = plateau::exact_cap_through(1.0, 0.6, 0.01);
  return plateau::sample_solution(grid, 0.6, 0.01,
                                  [&](const Eigen::VectorXd& x) { return cap.height(x.norm()); });
}

void BM_Residual(benchmark::State& state) {
  const auto s = cap_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(plateau::residual(s));
  state.counters["unknowns"] = s.grid->unknowns();
}
BENCHMARK(BM_Residual)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Jacobian(benchmark::State& state) {
  const auto s = cap_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(plateau::jacobian(s));
}
BENCHMARK(BM_Jacobian)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_QFormSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plateau::lab::certify_qform(n, 10000, 7, 1.0, 1));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_QFormSweep)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
