// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <vector>

#include "gas/types.hpp"

namespace gas::stats {

// Empirical quantile with linear interpolation between order statistics:
// probability p sits at (1-based) rank 1 + (n - 1) p. Input need not be sorted.
double quantile(std::span<const double> values, double p);
std::vector<double> quantiles(std::span<const double> values, std::span<const double> probs);

double mean(std::span<const double> values);
// Sample standard deviation (divisor n - 1); zero for fewer than two values.
double sd(std::span<const double> values);

double normal_cdf(double x);
// P(|Z| >= |z|) for a standard normal Z.
double two_sided_p(double z);

// Column-wise summaries of a sample matrix with draws in rows.
struct ColumnSummary {
  Vector mean;
  Vector sd;
  Matrix quant;  // columns x probs
};
ColumnSummary summarize_columns(const Matrix& samples, std::span<const double> probs);

}  // namespace gas::stats
