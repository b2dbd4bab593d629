#include <benchmark/benchmark.h>

#include "kohn/admissibility.hpp"
#include "kohn/disc_uncertainty.hpp"
#include "kohn/energy_verifier.hpp"
#include "kohn/support_optimizer.hpp"
#include "kohn/weight_evaluator.hpp"

namespace {

const kohn::ExponentSet kFive{{16, 0}, {12, 3}, {8, 6}, {4, 9}, {0, 12}};

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kohn::classify(kFive));
}
BENCHMARK(BM_Classify);

void BM_HessianGrid(benchmark::State& state) {
  const kohn::MonomialWeight w(kFive);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) acc += w.lambda_min_radial(0.05 * i, 0.05 * j);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_HessianGrid)->Arg(64)->Arg(128);

void BM_OptimalDelta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kohn::optimal_delta(kFive));
}
BENCHMARK(BM_OptimalDelta);

void BM_BergmanProject(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto f = kohn::random_disc_function(1, 6, k, k);
  for (auto _ : state) benchmark::DoNotOptimize(kohn::bergman_project(f));
}
BENCHMARK(BM_BergmanProject)->Arg(16)->Arg(32);

void BM_WeightedEnergy(benchmark::State& state) {
  const kohn::EnergyIntegrator integ(kFive, kohn::coercivity_multiplier(kFive));
  kohn::QuadratureSpec spec;
  spec.order = static_cast<int>(state.range(0));
  const auto u = kohn::TestFunction::bump(1.5, 1.0, 0.75);
  for (auto _ : state) benchmark::DoNotOptimize(integ.integrate(u, spec));
}
BENCHMARK(BM_WeightedEnergy)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RhoByDefinition(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kohn::rho_by_definition(kFive, {0.7, 1.1}));
}
BENCHMARK(BM_RhoByDefinition)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
