// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>
#include <numbers>

#include "families.hpp"

namespace gas::families {
namespace {

// Parameters (scale, shape).

bool in_support(const ParamVector& f) { return f[0] > 0.0 && f[1] > 0.0 && f.allFinite(); }
bool in_sample_space(double y) { return y > 0.0 && std::isfinite(y); }

double loglik(double y, const ParamVector& f) {
  const double lam = f[0];
  const double k = f[1];
  const double l = std::log(y / lam);
  return std::log(k) - std::log(lam) + (k - 1.0) * l - std::exp(k * l);
}

double mean(const ParamVector& f) { return f[0] * std::tgamma(1.0 + 1.0 / f[1]); }

double variance(const ParamVector& f) {
  const double g1 = std::tgamma(1.0 + 1.0 / f[1]);
  const double g2 = std::tgamma(1.0 + 2.0 / f[1]);
  return f[0] * f[0] * (g2 - g1 * g1);
}

ParamVector score(double y, const ParamVector& f) {
  const double lam = f[0];
  const double k = f[1];
  const double l = std::log(y / lam);
  const double z = std::exp(k * l);
  ParamVector out(2);
  out[0] = k * (z - 1.0) / lam;
  out[1] = 1.0 / k + l * (1.0 - z);
  return out;
}

ParamMatrix fisher(const ParamVector& f) {
  constexpr double one_minus_gamma = 1.0 - std::numbers::egamma;
  const double lam = f[0];
  const double k = f[1];
  ParamMatrix m(2, 2);
  m(0, 0) = k * k / (lam * lam);
  m(0, 1) = -one_minus_gamma / lam;
  m(1, 0) = m(0, 1);
  m(1, 1) = (std::numbers::pi * std::numbers::pi / 6.0 + one_minus_gamma * one_minus_gamma) / (k * k);
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  return std::weibull_distribution<double>(f[1], f[0])(rng);
}

// Shape from the coefficient of variation, shape ~ cv^-1.086.
ParamVector start(std::span<const double> y) {
  const double m = detail::clamp_positive(detail::sample_mean(y));
  const double sd = std::sqrt(detail::sample_variance(y));
  const double k = sd > 0.0 ? std::clamp(std::pow(sd / m, -1.086), 0.05, 100.0) : 100.0;
  ParamVector f(2);
  f << detail::clamp_positive(m / std::tgamma(1.0 + 1.0 / k)), k;
  return f;
}

}  // namespace

DistributionDescriptor weibull_scale() {
  DistributionDescriptor d;
  d.label = "weibull";
  d.parametrization = "scale";
  d.title = "Weibull";
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
