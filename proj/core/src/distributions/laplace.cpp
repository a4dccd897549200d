// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>
#include <vector>

#include "families.hpp"

namespace gas::families {
namespace {

bool in_support(const ParamVector& f) { return std::isfinite(f[0]) && f[1] > 0.0; }
bool in_sample_space(double y) { return std::isfinite(y); }

double loglik(double y, const ParamVector& f) {
  return -std::log(2.0 * f[1]) - std::abs(y - f[0]) / f[1];
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return 2.0 * f[1] * f[1]; }

ParamVector score(double y, const ParamVector& f) {
  const double e = y - f[0];
  const double s = f[1];
  ParamVector out(2);
  out[0] = (e > 0.0 ? 1.0 : (e < 0.0 ? -1.0 : 0.0)) / s;
  out[1] = (std::abs(e) / s - 1.0) / s;
  return out;
}

ParamMatrix fisher(const ParamVector& f) {
  ParamMatrix m = ParamMatrix::Zero(2, 2);
  m(0, 0) = 1.0 / (f[1] * f[1]);
  m(1, 1) = 1.0 / (f[1] * f[1]);
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  const double e = std::exponential_distribution<double>(1.0)(rng);
  const bool negative = std::bernoulli_distribution(0.5)(rng);
  return f[0] + (negative ? -e : e) * f[1];
}

// Median and mean absolute deviation about it.
ParamVector start(std::span<const double> y) {
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double med = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double mad = 0.0;
  for (double v : sorted) mad += std::abs(v - med);
  ParamVector f(2);
  f << med, detail::clamp_positive(mad / static_cast<double>(n));
  return f;
}

}  // namespace

DistributionDescriptor laplace_meanscale() {
  DistributionDescriptor d;
  d.label = "laplace";
  d.parametrization = "meanscale";
  d.title = "Laplace";
  d.param_title = "Mean-Scale";
  d.data_type = DataType::real;
  d.param_names = {"mean", "scale"};
  d.param_supports = {Support::real, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
