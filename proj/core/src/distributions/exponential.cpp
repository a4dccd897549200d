// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include "families.hpp"

namespace gas::families {
namespace {

bool in_support(const ParamVector& f) { return f[0] > 0.0 && std::isfinite(f[0]); }
bool in_sample_space(double y) { return y >= 0.0 && std::isfinite(y); }

double loglik(double y, const ParamVector& f) { return -std::log(f[0]) - y / f[0]; }

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[0] * f[0]; }

ParamVector score(double y, const ParamVector& f) {
  ParamVector s(1);
  s[0] = (y / f[0] - 1.0) / f[0];
  return s;
}

ParamMatrix fisher(const ParamVector& f) {
  ParamMatrix m(1, 1);
  m(0, 0) = 1.0 / (f[0] * f[0]);
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  return std::exponential_distribution<double>(1.0 / f[0])(rng);
}

ParamVector start(std::span<const double> y) {
  ParamVector f(1);
  f[0] = detail::clamp_positive(detail::sample_mean(y));
  return f;
}

}  // namespace

DistributionDescriptor exp_scale() {
  DistributionDescriptor d;
  d.label = "exp";
  d.parametrization = "scale";
  d.title = "Exponential";
  d.param_title = "Scale";
  d.data_type = DataType::duration;
  d.param_names = {"scale"};
  d.param_supports = {Support::positive};
  d.static_only = {false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
