// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/uncertainty.hpp"

#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gas/errors.hpp"
#include "gas/parallel.hpp"
#include "gas/stats.hpp"

namespace gas {

std::string_view to_string(BootMethod method) {
  switch (method) {
    case BootMethod::parametric: return "parametric";
    case BootMethod::simple_block: return "simple_block";
    case BootMethod::moving_block: return "moving_block";
    case BootMethod::stationary_block: return "stationary_block";
  }
  return "?";
}

std::optional<BootMethod> parse_boot_method(std::string_view text) {
  for (auto m : {BootMethod::parametric, BootMethod::simple_block, BootMethod::moving_block, BootMethod::stationary_block}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view to_string(UncertaintyMethod method) {
  return method == UncertaintyMethod::given_coefs ? "given_coefs" : "simulated_coefs";
}

std::optional<UncertaintyMethod> parse_uncertainty_method(std::string_view text) {
  if (text == "given_coefs") return UncertaintyMethod::given_coefs;
  if (text == "simulated_coefs") return UncertaintyMethod::simulated_coefs;
  return std::nullopt;
}

std::vector<std::size_t> block_indices(BootMethod method, std::size_t T, std::optional<double> block_length,
                                       std::uint64_t seed) {
  if (method == BootMethod::parametric) throw SpecError("block_indices needs a block bootstrap method");
  if (T == 0) throw DataError("cannot resample an empty series");
  if (!block_length) throw SpecError("the block length must be specified for " + std::string(to_string(method)));
  const double len = *block_length;
  if (!std::isfinite(len) || len < 1.0) throw SpecError("block length must be at least 1");
  if (method != BootMethod::stationary_block && (len != std::floor(len) || len > static_cast<double>(T))) {
    throw SpecError("block length must be an integer between 1 and the series length");
  }

  Rng rng = stream_rng(seed, 0);
  std::uniform_int_distribution<std::size_t> start(0, T - 1);
  std::vector<std::size_t> out;
  out.reserve(T);
  auto take = [&](std::size_t from, std::size_t count) {
    for (std::size_t j = 0; j < count && out.size() < T; ++j) out.push_back((from + j) % T);
  };
  switch (method) {
    case BootMethod::simple_block: {
      const auto L = static_cast<std::size_t>(len);
      const std::size_t blocks = (T + L - 1) / L;
      std::uniform_int_distribution<std::size_t> pick(0, blocks - 1);
      while (out.size() < T) take(pick(rng) * L, L);
      break;
    }
    case BootMethod::moving_block: {
      const auto L = static_cast<std::size_t>(len);
      while (out.size() < T) take(start(rng), L);
      break;
    }
    case BootMethod::stationary_block: {
      std::geometric_distribution<std::size_t> extra(1.0 / len);
      while (out.size() < T) take(start(rng), 1 + extra(rng));
      break;
    }
    case BootMethod::parametric:
      break;
  }
  return out;
}

namespace {

SeriesData resample_rows(const SeriesData& data, const std::vector<std::size_t>& idx) {
  SeriesData out;
  out.y.reserve(idx.size());
  for (std::size_t i : idx) out.y.push_back(data.y[i]);
  for (const Matrix& x : data.x) {
    Matrix rx(static_cast<Eigen::Index>(idx.size()), x.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) rx.row(static_cast<Eigen::Index>(r)) = x.row(static_cast<Eigen::Index>(idx[r]));
    out.x.push_back(std::move(rx));
  }
  return out;
}

}  // namespace

BootstrapResult bootstrap(const EstimationResult& est, const BootstrapOptions& options) {
  if (options.rep_boot < 1) throw SpecError("rep_boot must be at least 1");
  const auto rep = static_cast<std::size_t>(options.rep_boot);
  const auto T = est.data.size();
  if (options.method != BootMethod::parametric) block_indices(options.method, T, options.block_length, 0);

  EstimationOptions eo = est.options;
  eo.coef_start = est.coef_est;
  eo.compute_hessian = false;
  eo.progress = nullptr;
  eo.optim.progress = nullptr;

  std::vector<bool> missing(T);
  for (std::size_t t = 0; t < T; ++t) missing[t] = is_missing(est.data.y[t]);

  std::vector<std::optional<Vector>> draws(rep);
  parallel_for(rep, options.jobs, [&](std::size_t r) {
    Rng rng = stream_rng(options.seed, r);
    const std::uint64_t sub = rng();
    try {
      SeriesData data;
      if (options.method == BootMethod::parametric) {
        SimulateOptions so;
        so.x_sim = est.data.x;
        so.missing = missing;
        const SimulationResult sim = simulate_series(est.spec, est.coef_est, static_cast<int>(T), sub, so);
        data.y.assign(sim.y_sim.data(), sim.y_sim.data() + sim.y_sim.size());
        data.x = est.data.x;
      } else {
        data = resample_rows(est.data, block_indices(options.method, T, options.block_length, sub));
      }
      const EstimationResult fit = estimate(data, est.spec, est.constraints, eo);
      if (std::isfinite(fit.loglik) && fit.optim.converged) draws[r] = fit.coef_est;
    } catch (const Error&) {
    }
  });

  BootstrapResult out;
  out.method = options.method;
  out.probs = options.quant;
  std::vector<const Vector*> ok;
  for (const auto& d : draws) {
    if (d) ok.push_back(&*d);
  }
  out.failures = static_cast<int>(rep - ok.size());
  if (ok.empty()) throw EstimationError("all bootstrap replicates failed");
  out.coef_samples = Matrix(static_cast<Eigen::Index>(ok.size()), est.coef_est.size());
  for (std::size_t r = 0; r < ok.size(); ++r) out.coef_samples.row(static_cast<Eigen::Index>(r)) = ok[r]->transpose();
  const stats::ColumnSummary sum = stats::summarize_columns(out.coef_samples, options.quant);
  out.coef_mean = sum.mean;
  out.coef_sd = sum.sd;
  out.coef_quant = sum.quant;
  if (options.progress) {
    *options.progress << "bootstrap: " << ok.size() << " of " << rep << " replicates succeeded\n";
  }
  return out;
}

namespace {

Matrix normal_factor(Matrix v) {
  const Eigen::Index k = v.rows();
  {
    Eigen::LLT<Matrix> llt(v);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  const double jitter = 1e-10 * v.trace() / static_cast<double>(k);
  if (jitter > 0.0) {
    Eigen::LLT<Matrix> llt(v + jitter * Matrix::Identity(k, k));
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(v);
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

}  // namespace

Matrix coef_draws(const Vector& coef_est, const Matrix& coef_vcov, const CoefStructure& structure, int rep,
                  std::uint64_t seed, const DrawCheck& check) {
  if (rep < 1) throw SpecError("rep_gen must be at least 1");
  const Eigen::Index n = coef_est.size();
  if (n != structure.size() || coef_vcov.rows() != n || coef_vcov.cols() != n) {
    throw SpecError("coefficient vector and covariance dimensions disagree");
  }
  const Eigen::Index k = structure.free_count();
  Matrix v(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      v(i, j) = coef_vcov(structure.free_index[static_cast<std::size_t>(i)], structure.free_index[static_cast<std::size_t>(j)]);
    }
  }
  if (!v.allFinite()) throw EstimationError("coefficient covariance is not available");
  v = 0.5 * (v + v.transpose());
  const Matrix factor = k > 0 ? normal_factor(v) : Matrix(0, 0);
  const Vector center = structure.free_part(coef_est);

  Rng rng = stream_rng(seed, 0);
  std::normal_distribution<double> normal;
  Matrix out(rep, n);
  int filled = 0;
  const long cap = 100L * rep;
  for (long attempt = 0; filled < rep; ++attempt) {
    if (attempt >= cap) {
      throw EstimationError("coefficient draws kept leaving the region with a finite filter (" + std::to_string(filled) +
                            " of " + std::to_string(rep) + " accepted); the covariance reaches an unstable region");
    }
    Vector z(k);
    for (Eigen::Index i = 0; i < k; ++i) z[i] = normal(rng);
    const Vector full = structure.expand(center + factor * z);
    if (!full.allFinite()) continue;
    if ((full.array() < structure.lower.array()).any() || (full.array() > structure.upper.array()).any()) continue;
    if (check && !check(full)) continue;
    out.row(filled++) = full.transpose();
  }
  return out;
}

Matrix coef_draws(const EstimationResult& est, int rep, std::uint64_t seed) {
  return coef_draws(est.coef_est, est.coef_vcov, est.structure, rep, seed, [&](const Vector& c) {
    try {
      return filter_pass(est.spec, c, est.data, est.lik_skip).finite;
    } catch (const Error&) {
      return false;
    }
  });
}

namespace {

struct SetPaths {
  Matrix par;    // T x K
  Matrix score;  // T x K
  ForecastResult ahead;
};

void summarize_point(std::vector<double>& values, const std::vector<double>& probs, Eigen::Index t, Eigen::Index j,
                     Matrix& mean, Matrix& sd, std::vector<Matrix>& quant) {
  mean(t, j) = stats::mean(values);
  sd(t, j) = stats::sd(values);
  const std::vector<double> q = stats::quantiles(values, probs);
  for (std::size_t p = 0; p < probs.size(); ++p) quant[p](t, j) = q[p];
}

FilterUncertainty run_sets(const ModelSpec& spec_in, const SeriesData& data, const Matrix& sets,
                           const FilterUncertaintyOptions& options) {
  ModelSpec spec = spec_in;
  sync_regressor_counts(spec, data);
  spec.validate();
  if (sets.rows() < 1) throw SpecError("at least one coefficient set is required");
  const CoefLayout layout(spec);
  if (sets.cols() != layout.size()) {
    throw SpecError("coefficient sets must have " + std::to_string(layout.size()) + " columns, got " +
                    std::to_string(sets.cols()));
  }
  if (options.t_ahead < 0) throw SpecError("t_ahead must be nonnegative");
  if (options.t_ahead > 0 && options.rep_ahead < 1) throw SpecError("rep_ahead must be at least 1");

  const auto n_sets = static_cast<std::size_t>(sets.rows());
  std::vector<SetPaths> paths(n_sets);
  parallel_for(n_sets, options.jobs, [&](std::size_t i) {
    const Vector coef = sets.row(static_cast<Eigen::Index>(i)).transpose();
    const FilterOutput filt = filter_pass(spec, coef, data, 0);
    if (!filt.finite) throw EstimationError("filter left the parameter support for coefficient set " + std::to_string(i + 1));
    paths[i].par = filt.par_tv;
    paths[i].score = filt.score_tv;
    if (options.t_ahead > 0) {
      ForecastOptions fo;
      fo.t_ahead = options.t_ahead;
      fo.x_ahead = options.x_ahead;
      fo.rep_ahead = options.rep_ahead;
      fo.quant = options.quant;
      fo.seed = stream_rng(options.seed, i + 1)();
      paths[i].ahead = forecast_simulated_paths(spec, coef, data, fo);
    }
  });

  const auto T = static_cast<Eigen::Index>(data.size());
  const Eigen::Index H = options.t_ahead;
  const Eigen::Index K = paths[0].par.cols();
  FilterUncertainty out;
  out.method = options.method;
  out.horizon = static_cast<int>(H);
  out.tv_params = spec.tv_params();
  out.probs = options.quant;
  out.sets = static_cast<int>(n_sets);
  out.par_tv_mean = out.par_tv_sd = out.score_tv_mean = out.score_tv_sd = Matrix(T + H, K);
  out.par_tv_quant.assign(options.quant.size(), Matrix(T + H, K));
  out.score_tv_quant.assign(options.quant.size(), Matrix(T + H, K));

  std::vector<double> par_values;
  std::vector<double> score_values;
  for (Eigen::Index t = 0; t < T + H; ++t) {
    for (Eigen::Index j = 0; j < K; ++j) {
      par_values.clear();
      score_values.clear();
      for (const SetPaths& sp : paths) {
        if (t < T) {
          par_values.push_back(sp.par(t, j));
          score_values.push_back(sp.score(t, j));
          continue;
        }
        for (std::size_t r = 0; r < sp.ahead.par_paths.size(); ++r) {
          par_values.push_back(sp.ahead.par_paths[r](t - T, j));
          score_values.push_back(sp.ahead.score_paths[r](t - T, j));
        }
      }
      summarize_point(par_values, options.quant, t, j, out.par_tv_mean, out.par_tv_sd, out.par_tv_quant);
      summarize_point(score_values, options.quant, t, j, out.score_tv_mean, out.score_tv_sd, out.score_tv_quant);
    }
  }
  return out;
}

}  // namespace

FilterUncertainty filter_uncertainty(const EstimationResult& est, const FilterUncertaintyOptions& options) {
  if (options.method == UncertaintyMethod::given_coefs) return run_sets(est.spec, est.data, options.coef_set, options);
  const Matrix sets = coef_draws(est, options.rep_gen, options.seed);
  return run_sets(est.spec, est.data, sets, options);
}

FilterUncertainty filter_uncertainty(const ModelSpec& spec, const SeriesData& data,
                                     const FilterUncertaintyOptions& options) {
  if (options.method != UncertaintyMethod::given_coefs) {
    throw SpecError("simulated_coefs needs an estimation result for the coefficient covariance");
  }
  return run_sets(spec, data, options.coef_set, options);
}

}  // namespace gas
