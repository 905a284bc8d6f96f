#include <benchmark/benchmark.h>

#include <random>

#include "medea/config.hpp"
#include "medea/formulation.hpp"
#include "medea/mps.hpp"
#include "medea/simplex.hpp"

namespace {

using namespace medea;

const Scenario& toy() {
  static const Scenario s = load_config(MEDEA_SOURCE_DIR "/data/toy/scenario.ini").scenario;
  return s;
}

Scenario toy_hours(int hours) {
  Scenario s = toy();
  s.truncate(hours);
  return s;
}

void BM_BuildLp(benchmark::State& state) {
  const Scenario s = toy_hours(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_lp(s));
}
BENCHMARK(BM_BuildLp)->Arg(24)->Arg(168)->Unit(benchmark::kMillisecond);

void BM_SolveToy(benchmark::State& state) {
  const LpProblem p = build_lp(toy_hours(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
  state.counters["rows"] = p.num_rows();
  state.counters["cols"] = p.num_cols();
}
BENCHMARK(BM_SolveToy)->Arg(24)->Arg(72)->Arg(168)->Unit(benchmark::kMillisecond);

void BM_MpsRoundTrip(benchmark::State& state) {
  const LpProblem p = build_lp(toy());
  for (auto _ : state) benchmark::DoNotOptimize(parse_mps(to_mps(p)));
}
BENCHMARK(BM_MpsRoundTrip)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
