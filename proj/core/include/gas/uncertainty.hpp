// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "gas/estimation.hpp"
#include "gas/forecast.hpp"

namespace gas {

enum class BootMethod { parametric, simple_block, moving_block, stationary_block };

std::string_view to_string(BootMethod method);
std::optional<BootMethod> parse_boot_method(std::string_view text);

// Resampled positions, 0-based, of a circular block bootstrap of a length-T
// series. block_length is the block size for the fixed methods and the mean
// block size for stationary_block.
std::vector<std::size_t> block_indices(BootMethod method, std::size_t T, std::optional<double> block_length,
                                       std::uint64_t seed);

struct BootstrapOptions {
  BootMethod method = BootMethod::parametric;
  int rep_boot = 1000;
  std::optional<double> block_length;
  std::vector<double> quant = kDefaultQuant;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::ostream* progress = nullptr;
};

struct BootstrapResult {
  BootMethod method = BootMethod::parametric;
  std::vector<double> probs;
  Matrix coef_samples;  // successful replicates x k
  Vector coef_mean;
  Vector coef_sd;
  Matrix coef_quant;  // k x probs
  int failures = 0;
};

BootstrapResult bootstrap(const EstimationResult& est, const BootstrapOptions& options);

// Extra acceptance test for a drawn coefficient vector (the filter check).
using DrawCheck = std::function<bool(const Vector&)>;

// Multivariate normal draws about coef_est using the covariance of the free
// coordinates, carried to the full vector through the expansion map so fixed
// and tied coefficients hold exactly. Draws outside the bounds or failing
// `check` are redrawn, at most 100 * rep times in total.
Matrix coef_draws(const Vector& coef_est, const Matrix& coef_vcov, const CoefStructure& structure, int rep,
                  std::uint64_t seed, const DrawCheck& check = {});
// Same, rejecting draws whose in-sample filter is not finite.
Matrix coef_draws(const EstimationResult& est, int rep, std::uint64_t seed);

enum class UncertaintyMethod { given_coefs, simulated_coefs };

std::string_view to_string(UncertaintyMethod method);
std::optional<UncertaintyMethod> parse_uncertainty_method(std::string_view text);

struct FilterUncertaintyOptions {
  UncertaintyMethod method = UncertaintyMethod::simulated_coefs;
  Matrix coef_set;  // given_coefs: one coefficient vector per row
  int rep_gen = 1000;
  int t_ahead = 0;
  std::vector<Matrix> x_ahead;
  int rep_ahead = 1000;
  std::vector<double> quant = kDefaultQuant;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct FilterUncertainty {
  UncertaintyMethod method = UncertaintyMethod::given_coefs;
  int horizon = 0;
  std::vector<int> tv_params;
  std::vector<double> probs;
  Matrix par_tv_mean;  // (T + H) x K
  Matrix par_tv_sd;
  std::vector<Matrix> par_tv_quant;  // one (T + H) x K matrix per probability
  Matrix score_tv_mean;
  Matrix score_tv_sd;
  std::vector<Matrix> score_tv_quant;
  int sets = 0;
};

FilterUncertainty filter_uncertainty(const EstimationResult& est, const FilterUncertaintyOptions& options);
// given_coefs only, without an estimation result.
FilterUncertainty filter_uncertainty(const ModelSpec& spec, const SeriesData& data,
                                     const FilterUncertaintyOptions& options);

}  // namespace gas
