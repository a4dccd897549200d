// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gas/errors.hpp"

namespace gas::stats {

namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("quantile probability must lie in [0, 1]");
  const double pos = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::span<const double> values, double p) {
  if (values.empty()) return kNaN;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, p);
}

std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs) {
  std::vector<double> out(probs.size(), kNaN);
  if (values.empty()) return out;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < probs.size(); ++i) out[i] = sorted_quantile(sorted, probs[i]);
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return kNaN;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

ColumnSummary summarize_columns(const Matrix& samples, std::span<const double> probs) {
  const auto cols = samples.cols();
  ColumnSummary out{Vector(cols), Vector(cols), Matrix(cols, static_cast<Eigen::Index>(probs.size()))};
  std::vector<double> column(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < samples.rows(); ++i) column[static_cast<std::size_t>(i)] = samples(i, j);
    out.mean[j] = mean(column);
    out.sd[j] = sd(column);
    const auto q = quantiles(column, probs);
    for (std::size_t k = 0; k < q.size(); ++k) out.quant(j, static_cast<Eigen::Index>(k)) = q[k];
  }
  return out;
}

}  // namespace gas::stats
