// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include "families.hpp"

namespace gas::families {
namespace {

bool in_support(const ParamVector& f) { return std::isfinite(f[0]) && f[1] > 0.0; }
bool in_sample_space(double y) { return std::isfinite(y); }

double loglik(double y, const ParamVector& f) {
  const double e = y - f[0];
  return -0.5 * std::log(2.0 * M_PI * f[1]) - 0.5 * e * e / f[1];
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[1]; }

ParamVector score(double y, const ParamVector& f) {
  const double e = y - f[0];
  const double v = f[1];
  ParamVector s(2);
  s[0] = e / v;
  s[1] = (e * e / v - 1.0) / (2.0 * v);
  return s;
}

ParamMatrix fisher(const ParamVector& f) {
  ParamMatrix m = ParamMatrix::Zero(2, 2);
  m(0, 0) = 1.0 / f[1];
  m(1, 1) = 1.0 / (2.0 * f[1] * f[1]);
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  return std::normal_distribution<double>(f[0], std::sqrt(f[1]))(rng);
}

ParamVector start(std::span<const double> y) {
  ParamVector f(2);
  f[0] = detail::sample_mean(y);
  f[1] = detail::clamp_positive(detail::sample_variance(y));
  return f;
}

}  // namespace

DistributionDescriptor norm_meanvar() {
  DistributionDescriptor d;
  d.label = "norm";
  d.parametrization = "meanvar";
  d.title = "Normal";
  d.param_title = "Mean-Variance";
  d.data_type = DataType::real;
  d.param_names = {"mean", "var"};
  d.param_supports = {Support::real, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
