// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>

#include "families.hpp"
#include "gas/special_functions.hpp"

namespace gas::families {
namespace {

// Location mean, variance var and degrees of freedom df > 2. The squared
// scale is var (df - 2) / df; df is static-only.

bool in_support(const ParamVector& f) { return std::isfinite(f[0]) && f[1] > 0.0 && f[2] > 2.0 && std::isfinite(f[2]); }
bool in_sample_space(double y) { return std::isfinite(y); }

double loglik(double y, const ParamVector& f) {
  const double e = y - f[0];
  const double nu = f[2];
  const double w = (nu - 2.0) * f[1];
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(M_PI) + 0.5 * nu * std::log(w) -
         0.5 * (nu + 1.0) * std::log(w + e * e);
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[1]; }

ParamVector score(double y, const ParamVector& f) {
  const double e = y - f[0];
  const double v = f[1];
  const double nu = f[2];
  const double w = (nu - 2.0) * v;
  const double d = w + e * e;
  ParamVector s(3);
  s[0] = (nu + 1.0) * e / d;
  s[1] = 0.5 * nu / v - 0.5 * (nu + 1.0) * (nu - 2.0) / d;
  s[2] = 0.5 * special::digamma(0.5 * (nu + 1.0)) - 0.5 * special::digamma(0.5 * nu) + 0.5 * std::log(w / d) +
         0.5 * nu / (nu - 2.0) - 0.5 * (nu + 1.0) * v / d;
  return s;
}

// Standard location-scale-df information transported to (mean, var, df).
ParamMatrix fisher(const ParamVector& f) {
  const double v = f[1];
  const double nu = f[2];
  ParamMatrix m = ParamMatrix::Zero(3, 3);
  m(0, 0) = (nu + 1.0) * nu / ((nu + 3.0) * (nu - 2.0) * v);
  m(1, 1) = nu / (2.0 * (nu + 3.0) * v * v);
  m(1, 2) = 3.0 / (v * (nu + 3.0) * (nu - 2.0) * (nu + 1.0));
  m(2, 1) = m(1, 2);
  m(2, 2) = 0.25 * (special::trigamma(0.5 * nu) - special::trigamma(0.5 * (nu + 1.0))) -
            (nu + 5.0) / (2.0 * nu * (nu + 1.0) * (nu + 3.0)) -
            4.0 / ((nu + 3.0) * (nu + 1.0) * nu * (nu - 2.0)) + 2.0 / ((nu + 3.0) * nu * (nu - 2.0) * (nu - 2.0));
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  const double nu = f[2];
  const double scale = std::sqrt(f[1] * (nu - 2.0) / nu);
  return f[0] + scale * std::student_t_distribution<double>(nu)(rng);
}

// Degrees of freedom from excess kurtosis 6 / (df - 4), bounded to [5, 100].
ParamVector start(std::span<const double> y) {
  const double m = detail::sample_mean(y);
  const double v = detail::clamp_positive(detail::sample_variance(y));
  double m4 = 0.0;
  for (double x : y) m4 += std::pow(x - m, 4);
  m4 /= static_cast<double>(y.size());
  const double excess = m4 / (v * v) - 3.0;
  const double nu = excess > 0.0 ? std::clamp(4.0 + 6.0 / excess, 5.0, 100.0) : 100.0;
  ParamVector f(3);
  f << m, v, nu;
  return f;
}

}  // namespace

DistributionDescriptor t_meanvar() {
  DistributionDescriptor d;
  d.label = "t";
  d.parametrization = "meanvar";
  d.title = "Student's t";
  d.param_title = "Mean-Variance";
  d.data_type = DataType::real;
  d.param_names = {"mean", "var", "df"};
  d.param_supports = {Support::real, Support::positive, Support::positive};
  d.static_only = {false, false, true};
  d.orthogonal = false;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
