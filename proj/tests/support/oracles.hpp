// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "gas/distribution.hpp"
#include "gas/types.hpp"

namespace gas::testing {

// Random natural parameters inside the support, kept away from regions where
// finite differences or Monte-Carlo bands degrade (huge dispersion, df near 2).
inline ParamVector random_point(const DistributionDescriptor& d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = d.param_count();
  ParamVector f(k);
  for (int i = 0; i < k; ++i) {
    switch (d.param_supports[static_cast<std::size_t>(i)]) {
      case Support::positive: f[i] = std::exp(-1.0 + 2.5 * u(rng)); break;
      case Support::unit_interval: f[i] = 0.05 + 0.9 * u(rng); break;
      case Support::real: f[i] = -3.0 + 6.0 * u(rng); break;
      case Support::circular: f[i] = std::numbers::pi * (2.0 * u(rng) - 1.0); break;
    }
  }
  if (d.label == "skellam") f[1] = std::abs(f[0]) + 0.2 + 4.0 * u(rng);
  if (d.label == "t") f[2] = 3.0 + 17.0 * u(rng);
  if (d.label == "negbin") f[1] = 0.05 + 1.5 * u(rng);
  if (d.label == "gamma" || d.label == "weibull") f[1] = 0.5 + 4.0 * u(rng);
  return f;
}

// Central difference of g at x along coordinate i.
inline double central_diff(const std::function<double(const ParamVector&)>& g, ParamVector x, int i, double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = g(x);
  x[i] = x0 - h;
  const double down = g(x);
  return (up - down) / (2.0 * h);
}

inline bool close(double actual, double expected, double rel, double abs) {
  return std::abs(actual - expected) <= abs + rel * std::abs(expected);
}

// Sample mean and standard error of the mean.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace gas::testing
