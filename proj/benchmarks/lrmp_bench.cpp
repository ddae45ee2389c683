#include <benchmark/benchmark.h>

#include "lrmp/exact.hpp"
#include "lrmp/had.hpp"
#include "lrmp/montecarlo.hpp"

using namespace lrmp;

static void BM_RankUnrank(benchmark::State& state) {
  const StateSpace space(8, static_cast<int>(state.range(0)));
  std::uint64_t i = 0;
  for (auto _ : state) {
    const Configuration eta = space.unrank(i % space.size());
    benchmark::DoNotOptimize(space.rank(eta));
    ++i;
  }
}
BENCHMARK(BM_RankUnrank)->Arg(4)->Arg(8)->Arg(16);

static void BM_BuildGenerator(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const StateSpace space(6, N);
  const RateSpec spec(had_rates(N), 0.5, unit_params(6));
  for (auto _ : state) benchmark::DoNotOptimize(build_generator(space, spec).max_rate);
  state.counters["states"] = static_cast<double>(space.size());
}
BENCHMARK(BM_BuildGenerator)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Stationary(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Generator gen = build_generator(StateSpace(6, N), RateSpec(had_rates(N), 0.5, unit_params(6)));
  for (auto _ : state) benchmark::DoNotOptimize(stationary(gen).probs.data());
  state.counters["states"] = static_cast<double>(gen.size());
}
BENCHMARK(BM_Stationary)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  SimConfig cfg;
  cfg.spec = had_spec(HadSystem(3, 3, {1.0, 2.0, 3.0}));
  cfg.initial = Configuration{3, 0, 0};
  cfg.max_events = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 42;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg).total_time);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
