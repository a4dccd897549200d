// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include <vector>

#include "gas/distribution.hpp"

namespace {

// Score and Fisher evaluation per family at its start values for a small sample.
void BM_ScoreFisher(benchmark::State& state) {
  const auto& d = gas::all_distributions()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(d.label);
  const std::vector<double> draws = gas::random(d, gas::start(d, std::vector<double>{1.0, 2.0, 3.0, 2.0}), 256, 3);
  const gas::ParamVector f = gas::start(d, draws);
  const std::vector<bool> links = d.default_links();
  for (auto _ : state) {
    for (double y : draws) {
      benchmark::DoNotOptimize(gas::score(d, y, f, links));
    }
    benchmark::DoNotOptimize(gas::fisher(d, f, links));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(draws.size()));
}

}  // namespace

BENCHMARK(BM_ScoreFisher)->DenseRange(0, 11);
