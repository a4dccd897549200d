// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>

#include "families.hpp"
#include "gas/special_functions.hpp"

namespace gas::families {
namespace {

// NB2: mean mu, dispersion alpha, Var = mu + alpha mu^2.
// With size r = 1/alpha this is the gamma-Poisson mixture with shape r.

bool in_support(const ParamVector& f) { return f[0] > 0.0 && f[1] > 0.0; }
bool in_sample_space(double y) { return y >= 0.0 && detail::is_integer(y); }

double loglik(double y, const ParamVector& f) {
  const double mu = f[0];
  const double r = 1.0 / f[1];
  return std::lgamma(y + r) - std::lgamma(r) - std::lgamma(y + 1.0) - r * std::log1p(mu / r) +
         y * (std::log(mu) - std::log(r + mu));
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[0] + f[1] * f[0] * f[0]; }

// psi(y + r) - psi(r); exact finite sum for moderate integer y.
double digamma_shift(double y, double r) {
  if (y > 1e5) return special::digamma(y + r) - special::digamma(r);
  double acc = 0.0;
  for (double j = y - 1.0; j >= 0.0; j -= 1.0) acc += 1.0 / (r + j);
  return acc;
}

ParamVector score(double y, const ParamVector& f) {
  const double mu = f[0];
  const double alpha = f[1];
  const double r = 1.0 / alpha;
  ParamVector s(2);
  s[0] = (y - mu) / (mu * (1.0 + alpha * mu));
  const double d_size = digamma_shift(y, r) - std::log1p(alpha * mu) + (mu - y) / (r + mu);
  s[1] = -r * r * d_size;
  return s;
}

// The mean block is 1 / (mu (1 + alpha mu)); the parameters are orthogonal.
// For the size r, E[-d2 l / dr2] = sum_j P(Y > j) / (r + j)^2 - mu / (r (r + mu)),
// carried to alpha by (dr / dalpha)^2 = r^4.
ParamMatrix fisher(const ParamVector& f) {
  const double mu = f[0];
  const double alpha = f[1];
  const double r = 1.0 / alpha;
  const double log_q = std::log(mu) - std::log(r + mu);
  double log_p = -r * std::log1p(mu / r);
  double cdf = 0.0;
  double acc = 0.0;
  for (double j = 0.0;; j += 1.0) {
    cdf += std::exp(log_p);
    const double surv = std::max(0.0, 1.0 - cdf);
    acc += surv / ((r + j) * (r + j));
    const double step = std::log(j + r) - std::log(j + 1.0) + log_q;
    log_p += step;
    // Past the mode the pmf ratio stays below exp(step), so the remaining
    // mass is at most a geometric tail.
    if (j > mu && step < 0.0 && log_p - std::log1p(-std::exp(step)) < std::log(1e-17)) break;
  }
  ParamMatrix m = ParamMatrix::Zero(2, 2);
  m(0, 0) = 1.0 / (mu * (1.0 + alpha * mu));
  m(1, 1) = r * r * r * r * (acc - mu / (r * (r + mu)));
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  const double r = 1.0 / f[1];
  const double lambda = std::gamma_distribution<double>(r, f[0] / r)(rng);
  if (!(lambda > 0.0)) return 0.0;
  return static_cast<double>(std::poisson_distribution<long long>(lambda)(rng));
}

ParamVector start(std::span<const double> y) {
  const double m = detail::clamp_positive(detail::sample_mean(y));
  const double v = detail::sample_variance(y);
  ParamVector f(2);
  f[0] = m;
  f[1] = detail::clamp_positive((v - m) / (m * m));
  return f;
}

}  // namespace

DistributionDescriptor negbin_nb2() {
  DistributionDescriptor d;
  d.label = "negbin";
  d.parametrization = "nb2";
  d.title = "Negative Binomial";
  d.param_title = "NB2";
  d.data_type = DataType::count;
  d.param_names = {"mean", "dispersion"};
  d.param_supports = {Support::positive, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
