// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/special_functions.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "gas/errors.hpp"

namespace gas::special {
namespace {

constexpr double kSeriesEps = 1e-17;

// Large-argument expansion:
// I_k(z) ~ e^z / sqrt(2 pi z) * sum_n (-1)^n a_n(k) / z^n.
// Only used where the terms shrink geometrically from the start.
double log_bessel_i_asymptotic(int k, double z) {
  const double mu = 4.0 * static_cast<double>(k) * static_cast<double>(k);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double odd = 2.0 * n - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * n * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < kSeriesEps * std::abs(sum)) break;
  }
  return z - 0.5 * std::log(2.0 * M_PI * z) + std::log(sum);
}

// Ascending series sum_m (z/2)^(2m+k) / (m! (m+k)!), evaluated outward from
// its largest term so that neither overflow nor many wasted terms occur.
double log_bessel_i_series(int k, double z) {
  const double kd = static_cast<double>(k);
  const double half = 0.5 * z;
  const double log_half = std::log(half);
  const double peak = std::max(0.0, std::floor(0.5 * (std::sqrt(kd * kd + z * z) - kd - 2.0)));
  auto log_term = [&](double m) {
    return (2.0 * m + kd) * log_half - std::lgamma(m + 1.0) - std::lgamma(m + kd + 1.0);
  };
  const double log_peak = log_term(peak);
  const double q = half * half;

  double sum = 1.0;
  double term = 1.0;
  for (double m = peak;; m += 1.0) {
    term *= q / ((m + 1.0) * (m + kd + 1.0));
    sum += term;
    if (term < kSeriesEps * sum) break;
  }
  term = 1.0;
  for (double m = peak; m > 0.0; m -= 1.0) {
    term *= (m * (m + kd)) / q;
    sum += term;
    if (term < kSeriesEps * sum) break;
  }
  return log_peak + std::log(sum);
}

}  // namespace

double log_bessel_i(int order, double z) {
  if (!(z >= 0.0)) throw DomainError("log_bessel_i: argument must be nonnegative");
  const int k = std::abs(order);
  if (z == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (std::isinf(z)) return z;
  const double kd = static_cast<double>(k);
  if (z > 50.0 + kd * kd) return log_bessel_i_asymptotic(k, z);
  return log_bessel_i_series(k, z);
}

double bessel_i_ratio(int order, double z) {
  if (z == 0.0) return 0.0;
  const int k = std::abs(order);
  return std::exp(log_bessel_i(k + 1, z) - log_bessel_i(k, z));
}

double digamma(double x) { return boost::math::digamma(x); }

double trigamma(double x) { return boost::math::trigamma(x); }

}  // namespace gas::special
