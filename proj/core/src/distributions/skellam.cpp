// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include "families.hpp"
#include "gas/special_functions.hpp"

namespace gas::families {
namespace {

// Difference of two Poisson variables with rates mu1 = (var + mean) / 2 and
// mu2 = (var - mean) / 2, so var > |mean| is required.

bool in_support(const ParamVector& f) { return std::isfinite(f[0]) && f[1] > std::abs(f[0]); }
bool in_sample_space(double y) { return detail::is_integer(y); }

struct Rates {
  double mu1;
  double mu2;
  double z;  // 2 sqrt(mu1 mu2)
};

Rates rates(const ParamVector& f) {
  const double mu1 = 0.5 * (f[1] + f[0]);
  const double mu2 = 0.5 * (f[1] - f[0]);
  return {mu1, mu2, 2.0 * std::sqrt(mu1 * mu2)};
}

double loglik(double y, const ParamVector& f) {
  const Rates r = rates(f);
  const int k = static_cast<int>(y);
  return -f[1] + 0.5 * y * (std::log(r.mu1) - std::log(r.mu2)) + special::log_bessel_i(k, r.z);
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return f[1]; }

ParamVector score(double y, const ParamVector& f) {
  const Rates r = rates(f);
  const double k = std::abs(y);
  const double zr = r.z * special::bessel_i_ratio(static_cast<int>(k), r.z);
  const double d1 = -1.0 + (y + k + zr) / (2.0 * r.mu1);
  const double d2 = -1.0 + (-y + k + zr) / (2.0 * r.mu2);
  ParamVector s(2);
  s[0] = 0.5 * (d1 - d2);
  s[1] = 0.5 * (d1 + d2);
  return s;
}

// No closed form; expectation of the score outer product by direct summation
// over the bulk of the support.
ParamMatrix fisher(const ParamVector& f) {
  const double half_width = 12.0 * std::sqrt(f[1]) + 30.0;
  const double lo = std::floor(f[0] - half_width);
  const double hi = std::ceil(f[0] + half_width);
  ParamMatrix m = ParamMatrix::Zero(2, 2);
  for (double y = lo; y <= hi; y += 1.0) {
    const double p = std::exp(loglik(y, f));
    if (p == 0.0) continue;
    const ParamVector s = score(y, f);
    m.noalias() += p * s * s.transpose();
  }
  return m;
}

double random(const ParamVector& f, Rng& rng) {
  const Rates r = rates(f);
  const auto a = std::poisson_distribution<long long>(r.mu1)(rng);
  const auto b = std::poisson_distribution<long long>(r.mu2)(rng);
  return static_cast<double>(a - b);
}

ParamVector start(std::span<const double> y) {
  const double m = detail::sample_mean(y);
  const double v = detail::sample_variance(y);
  ParamVector f(2);
  f[0] = m;
  f[1] = std::max(v, std::abs(m) + detail::kStartClamp);
  return f;
}

}  // namespace

DistributionDescriptor skellam_meanvar() {
  DistributionDescriptor d;
  d.label = "skellam";
  d.parametrization = "meanvar";
  d.title = "Skellam";
  d.param_title = "Mean-Variance";
  d.data_type = DataType::integer;
  d.param_names = {"mean", "var"};
  d.param_supports = {Support::real, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = false;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
