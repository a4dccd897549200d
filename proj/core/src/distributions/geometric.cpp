// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include "families.hpp"

namespace gas::families {
namespace {

// Failures before the first success, success probability 1 / (1 + mean).

bool in_support(const ParamVector& f) { return f[0] > 0.0; }
bool in_sample_space(double y) { return y >= 0.0 && detail::is_integer(y); }

double loglik(double y, const ParamVector& f) {
  return y * std::log(f[0]) - (y + 1.0) * std::log1p(f[0]);
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[0] * (1.0 + f[0]); }

ParamVector score(double y, const ParamVector& f) {
  ParamVector s(1);
  s[0] = (y - f[0]) / (f[0] * (1.0 + f[0]));
  return s;
}

ParamMatrix fisher(const ParamVector& f) {
  ParamMatrix m(1, 1);
  m(0, 0) = 1.0 / (f[0] * (1.0 + f[0]));
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  return static_cast<double>(std::geometric_distribution<long long>(1.0 / (1.0 + f[0]))(rng));
}

ParamVector start(std::span<const double> y) {
  ParamVector f(1);
  f[0] = detail::clamp_positive(detail::sample_mean(y));
  return f;
}

}  // namespace

DistributionDescriptor geom_mean() {
  DistributionDescriptor d;
  d.label = "geom";
  d.parametrization = "mean";
  d.title = "Geometric";
  d.param_title = "Mean";
  d.data_type = DataType::count;
  d.param_names = {"mean"};
  d.param_supports = {Support::positive};
  d.static_only = {false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
