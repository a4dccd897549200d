// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include "gas/estimation.hpp"
#include "gas/forecast.hpp"

namespace {

void BM_EstimatePoisson(benchmark::State& state) {
  const gas::ModelSpec spec = gas::ModelSpec::make("pois");
  gas::Vector truth(3);
  truth << 0.1, 0.08, 0.85;
  const gas::SimulationResult sim = gas::simulate_series(spec, truth, static_cast<int>(state.range(0)), 2);
  const gas::SeriesData data{{sim.y_sim.begin(), sim.y_sim.end()}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gas::estimate(data, spec).loglik);
  }
}

void BM_ForecastPaths(benchmark::State& state) {
  const gas::ModelSpec spec = gas::ModelSpec::make("pois");
  gas::Vector coef(3);
  coef << 0.1, 0.08, 0.85;
  const gas::SimulationResult sim = gas::simulate_series(spec, coef, 500, 3);
  const gas::SeriesData data{{sim.y_sim.begin(), sim.y_sim.end()}, {}};
  gas::ForecastOptions o;
  o.t_ahead = 20;
  o.rep_ahead = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gas::forecast_simulated_paths(spec, coef, data, o).y_mean);
  }
}

}  // namespace

BENCHMARK(BM_EstimatePoisson)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForecastPaths)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
