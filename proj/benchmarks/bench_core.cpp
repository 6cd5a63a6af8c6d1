#include <benchmark/benchmark.h>

#include "cbolab/consensus.hpp"
#include "cbolab/cutoffs.hpp"
#include "cbolab/objectives.hpp"
#include "cbolab/particle.hpp"
#include "cbolab/pde.hpp"

using namespace cbolab;

namespace {

Positions gaussian_cloud(std::size_t n, std::size_t d) {
  return InitialDistribution{InitialDistribution::Kind::gaussian, {}, 2.0}.sample(n, d, 3);
}

void BM_ConsensusPoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto obj = builtin_objective("rastrigin", 10);
  const auto cloud = gaussian_cloud(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(consensus_point(cloud, obj, 30.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConsensusPoint)->RangeMultiplier(8)->Range(64, 32768);

void BM_CboStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto obj = builtin_objective("ackley", 2);
  ParticleEnsemble ens{gaussian_cloud(n, 2), {1.0, 0.7, 30.0, 0.01}, 5};
  for (auto _ : state) benchmark::DoNotOptimize(cbo_step(ens, obj));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CboStep)->RangeMultiplier(8)->Range(64, 32768);

void BM_TruncatedCoefficients(benchmark::State& state) {
  const TruncatedCoefficients tc(cbo_coefficients(Vec{0.5, -0.5}), desk_cutoff(8.0));
  const auto points = gaussian_cloud(1024, 2);
  for (auto _ : state)
    for (std::size_t i = 0; i < points.size(); ++i) benchmark::DoNotOptimize(tc.evaluate(points[i], 0.0));
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_TruncatedCoefficients);

void BM_SpectralRhs(benchmark::State& state) {
  PdeProblem p;
  p.grid = {2, 8.0, static_cast<int>(state.range(0)), 4 * static_cast<int>(state.range(0))};
  p.objective = builtin_objective("quadratic", 2);
  p.lambda = 1.0;
  p.sigma = 0.5;
  p.cutoff = desk_cutoff(p.grid.L);
  PdeSolver solver(p);
  const auto field = normalized_bump(solver, Bump{{0.0, 0.0}, 2.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(field, 0.0));
}
BENCHMARK(BM_SpectralRhs)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
