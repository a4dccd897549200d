// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include "gas/dynamics.hpp"
#include "gas/forecast.hpp"

namespace {

gas::Vector coefficients(const gas::ModelSpec& spec) {
  gas::Vector c(gas::CoefLayout(spec).size());
  if (spec.distr->label == "norm") {
    c << 0.0, 0.05, 0.9, 0.0, 0.05, 0.9;
  } else {
    c << 0.1, 0.08, 0.85;
  }
  return c;
}

gas::ModelSpec model(const std::string& label, gas::Scaling scaling) {
  gas::ModelSpec spec = gas::ModelSpec::make(label);
  if (label == "norm") {
    spec.par_static = {false, false};
    spec.reset_links();
  }
  spec.scaling = scaling;
  return spec;
}

void run_filter(benchmark::State& state, const std::string& label, gas::Scaling scaling) {
  const gas::ModelSpec spec = model(label, scaling);
  const gas::Vector coef = coefficients(spec);
  const int T = static_cast<int>(state.range(0));
  const gas::SimulationResult sim = gas::simulate_series(spec, coef, T, 1);
  const gas::SeriesData data{{sim.y_sim.begin(), sim.y_sim.end()}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gas::filter_pass(spec, coef, data).loglik_sum);
  }
  state.SetItemsProcessed(state.iterations() * T);
}

void BM_FilterPoisson(benchmark::State& state) { run_filter(state, "pois", gas::Scaling::unit); }
void BM_FilterNormalFisherInv(benchmark::State& state) { run_filter(state, "norm", gas::Scaling::fisher_inv); }
void BM_FilterNormalFullInvSqrt(benchmark::State& state) {
  run_filter(state, "norm", gas::Scaling::full_fisher_inv_sqrt);
}

}  // namespace

BENCHMARK(BM_FilterPoisson)->Arg(1000)->Arg(10000);
BENCHMARK(BM_FilterNormalFisherInv)->Arg(1000)->Arg(10000);
BENCHMARK(BM_FilterNormalFullInvSqrt)->Arg(1000);
