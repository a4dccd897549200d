// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>
#include <numbers>

#include "families.hpp"
#include "gas/special_functions.hpp"

namespace gas::families {
namespace {

// Parameters (mean direction, concentration). The reported variance is the
// circular variance 1 - I1(conc) / I0(conc).

bool in_support(const ParamVector& f) { return std::isfinite(f[0]) && f[1] > 0.0 && std::isfinite(f[1]); }
bool in_sample_space(double y) { return std::isfinite(y); }

double mean_resultant(double kappa) { return special::bessel_i_ratio(0, kappa); }

double loglik(double y, const ParamVector& f) {
  return f[1] * std::cos(y - f[0]) - std::log(2.0 * std::numbers::pi) - special::log_bessel_i(0, f[1]);
}

double mean(const ParamVector& f) { return f[0]; }
double variance(const ParamVector& f) { return 1.0 - mean_resultant(f[1]); }

ParamVector score(double y, const ParamVector& f) {
  ParamVector s(2);
  s[0] = f[1] * std::sin(y - f[0]);
  s[1] = std::cos(y - f[0]) - mean_resultant(f[1]);
  return s;
}

ParamMatrix fisher(const ParamVector& f) {
  const double kappa = f[1];
  const double a = mean_resultant(kappa);
  ParamMatrix m = ParamMatrix::Zero(2, 2);
  m(0, 0) = kappa * a;
  m(1, 1) = 1.0 - a / kappa - a * a;
  return m;
}

// Best and Fisher (1979) rejection sampler; output lies in (mean - pi, mean + pi].
double random(const ParamVector& f, Rng& rng) {
  const double kappa = f[1];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (kappa < 1e-8) return f[0] + std::numbers::pi * (2.0 * unif(rng) - 1.0);
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double z = std::cos(std::numbers::pi * unif(rng));
    const double w = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - w);
    const double u2 = unif(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double angle = std::acos(std::clamp(w, -1.0, 1.0));
      return unif(rng) < 0.5 ? f[0] - angle : f[0] + angle;
    }
  }
}

// Circular mean and an approximate inverse of the mean resultant length.
ParamVector start(std::span<const double> y) {
  double c = 0.0;
  double s = 0.0;
  for (double v : y) {
    c += std::cos(v);
    s += std::sin(v);
  }
  const double n = static_cast<double>(y.size());
  const double rbar = std::min(std::hypot(c, s) / n, 1.0 - detail::kStartClamp);
  double kappa;
  if (rbar < 0.53) {
    kappa = 2.0 * rbar + rbar * rbar * rbar + 5.0 * std::pow(rbar, 5) / 6.0;
  } else if (rbar < 0.85) {
    kappa = -0.4 + 1.39 * rbar + 0.43 / (1.0 - rbar);
  } else {
    kappa = 1.0 / (rbar * rbar * rbar - 4.0 * rbar * rbar + 3.0 * rbar);
  }
  ParamVector f(2);
  f << std::atan2(s, c), detail::clamp_positive(kappa);
  return f;
}

}  // namespace

DistributionDescriptor vonmises_meanconc() {
  DistributionDescriptor d;
  d.label = "vonmises";
  d.parametrization = "meanconc";
  d.title = "von Mises";
  d.param_title = "Mean-Concentration";
  d.data_type = DataType::circular;
  d.param_names = {"mean", "conc"};
  d.param_supports = {Support::circular, Support::positive};
  d.static_only = {false, false};
  d.orthogonal = true;
  d.fn = {in_support, in_sample_space, loglik, mean, variance, score, fisher, random, start};
  return d;
}

}  // namespace gas::families
