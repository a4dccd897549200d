// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include "families.hpp"
#include "gas/special_functions.hpp"

namespace gas::families {
namespace {

// Parameters (scale, shape).

bool in_support(const ParamVector& f) { return f[0] > 0.0 && f[1] > 0.0 && f.allFinite(); }
bool in_sample_space(double y) { return y > 0.0 && std::isfinite(y); }

double loglik(double y, const ParamVector& f) {
  const double s = f[0];
  const double k = f[1];
  return -std::lgamma(k) - k * std::log(s) + (k - 1.0) * std::log(y) - y / s;
}

double mean(const ParamVector& f) { return f[0] * f[1]; }
double variance(const ParamVector& f) { return f[1] * f[0] * f[0]; }

ParamVector score(double y, const ParamVector& f) {
  const double s = f[0];
  const double k = f[1];
  ParamVector out(2);
  out[0] = (y / s - k) / s;
  out[1] = std::log(y / s) - special::digamma(k);
  return out;
}

ParamMatrix fisher(const ParamVector& f) {
  const double s = f[0];
  const double k = f[1];
  ParamMatrix m(2, 2);
  m(0, 0) = k / (s * s);
  m(0, 1) = 1.0 / s;
  m(1, 0) = 1.0 / s;
  m(1, 1) = special::trigamma(k);
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  return std::gamma_distribution<double>(f[1], f[0])(rng);
}

ParamVector start(std::span<const double> y) {
  const double m = detail::clamp_positive(detail::sample_mean(y));
  const double v = detail::clamp_positive(detail::sample_variance(y));
  ParamVector f(2);
  f << v / m, detail::clamp_positive(m * m / v);
  return f;
}

}  // namespace

DistributionDescriptor gamma_scale() {
  DistributionDescriptor d;
  d.label = "gamma";
  d.parametrization = "scale";
  d.title = "Gamma";
  d.param_title = "Scale";
  d.data_type = DataType::duration;
  d.param_names = {"scale", "shape"};
  d.param_supports = {Support::positive, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = false;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
