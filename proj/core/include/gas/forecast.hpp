// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <vector>

#include "gas/dynamics.hpp"
#include "gas/estimation.hpp"
#include "gas/model.hpp"

namespace gas {

enum class ForecastMethod { mean_path, simulated_paths };

std::string_view to_string(ForecastMethod method);
std::optional<ForecastMethod> parse_forecast_method(std::string_view text);

inline const std::vector<double> kDefaultQuant{0.025, 0.975};

struct ForecastResult {
  ForecastMethod method = ForecastMethod::mean_path;
  int horizon = 0;
  std::vector<int> tv_params;
  std::vector<double> probs;  // empty for mean_path
  Vector y_mean;              // H
  Vector y_sd;                // H, simulated_paths only
  Matrix y_quant;             // H x probs, simulated_paths only
  Matrix par_tv_ahead;        // H x K link-space values (path mean for simulated_paths)

  // Per-path draws kept for filtered-parameter uncertainty and sample output.
  Matrix y_paths;                    // rep x H
  std::vector<Matrix> par_paths;     // rep entries of H x K
  std::vector<Matrix> score_paths;   // rep entries of H x K
};

struct ForecastOptions {
  int t_ahead = 0;
  // Regressors for the forecast period, one H x M_i matrix per distribution
  // parameter; may be empty when the model has no regressors.
  std::vector<Matrix> x_ahead;
  int rep_ahead = 1000;
  std::vector<double> quant = kDefaultQuant;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// Continues the recursion past the sample with a zero score and reports the
// implied conditional means.
ForecastResult forecast_mean_path(const ModelSpec& spec, const Vector& coef, const SeriesData& data,
                                  const ForecastOptions& options);
ForecastResult forecast_mean_path(const EstimationResult& est, const ForecastOptions& options);

// Draw, score and advance rep_ahead independent continuations. A path whose
// parameters leave the support is redrawn, at most 100 times per path.
ForecastResult forecast_simulated_paths(const ModelSpec& spec, const Vector& coef, const SeriesData& data,
                                        const ForecastOptions& options);
ForecastResult forecast_simulated_paths(const EstimationResult& est, const ForecastOptions& options);

struct SimulationResult {
  std::vector<int> tv_params;
  Vector y_sim;      // T_sim
  Matrix par_tv_sim; // T_sim x K
  Matrix score_sim;  // T_sim x K
};

struct SimulateOptions {
  int burn_in = 0;
  // Per-parameter regressors covering burn_in + t_sim rows, or t_sim rows in
  // which case burn-in reuses the first row.
  std::vector<Matrix> x_sim;
  // Positions (after burn-in) treated as missing: no draw, zero score.
  std::vector<bool> missing;
};

SimulationResult simulate_series(ModelSpec spec, const Vector& coef, int t_sim, std::uint64_t seed,
                                 const SimulateOptions& options = {});

}  // namespace gas
