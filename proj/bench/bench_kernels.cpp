// Serial reference loops against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "splitlab/descriptors.hpp"
#include "splitlab/experiment.hpp"
#include "splitlab/laws.hpp"
#include "splitlab/rng.hpp"
#include "splitlab/stats.hpp"
#include "splitlab/sweeps.hpp"

using namespace splitlab;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& s) {
  s.SetLabel(s.range(0) ? "openmp x" + std::to_string(omp_get_max_threads()) : "serial");
}

void BM_CharacterizationSweep(benchmark::State& s) {
  const auto tau = parse_family("argmin:cubepoly", TiePolicy::flag);
  const auto law = parse_law("gaussian:1");
  for (auto _ : s) {
    auto v = map_indices<CharacterizationVerdicts>(2000, mode(s), [&](std::size_t i) {
      return sweep_characterization(tau, sample_increments(law, 12, 1, i), 12);
    });
    benchmark::DoNotOptimize(v.data());
  }
  label(s);
}

void BM_SplittingExperiment(benchmark::State& s) {
  const auto tau = parse_family("argmin:identity", TiePolicy::flag);
  ExperimentSettings cfg;
  cfg.p = 0.1;
  cfg.trials = 20000;
  for (auto _ : s) benchmark::DoNotOptimize(splitting_experiment(tau, parse_law("gaussian:1"), cfg, mode(s)));
  label(s);
}

void BM_PermutationTest(benchmark::State& s) {
  VectorSample x, y;
  CounterRng rng(3, 0);
  for (int i = 0; i < 300; ++i) {
    const double a[2] = {rng.uniform(), rng.uniform()};
    const double b[2] = {rng.uniform(), rng.uniform()};
    x.push(a);
    y.push(b);
  }
  for (auto _ : s) benchmark::DoNotOptimize(permutation_independence(x, y, 199, 5, mode(s)));
  label(s);
}

}  // namespace

BENCHMARK(BM_CharacterizationSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplittingExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationTest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
