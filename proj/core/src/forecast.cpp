// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/forecast.hpp"

#include "gas/errors.hpp"
#include "gas/parallel.hpp"
#include "gas/stats.hpp"

namespace gas {

std::string_view to_string(ForecastMethod method) {
  return method == ForecastMethod::mean_path ? "mean_path" : "simulated_paths";
}

std::optional<ForecastMethod> parse_forecast_method(std::string_view text) {
  if (text == "mean_path") return ForecastMethod::mean_path;
  if (text == "simulated_paths") return ForecastMethod::simulated_paths;
  return std::nullopt;
}

namespace {

constexpr int kPathAttempts = 100;

Matrix stack(const Matrix& top, Eigen::Index extra_rows) {
  Matrix out = Matrix::Zero(top.rows() + extra_rows, top.cols());
  out.topRows(top.rows()) = top;
  return out;
}

// In-sample filter state extended by H rows, ready to be continued.
struct Continuation {
  ModelSpec spec;
  Recursion rec;
  std::vector<Matrix> x_tv;
  Matrix f, s, e;
  Vector init, f_bar;
  Eigen::Index T = 0;
  Eigen::Index H = 0;

  Continuation(const ModelSpec& spec_in, const Vector& coef, const SeriesData& data, const ForecastOptions& opt)
      : spec(synced(spec_in, data)), rec(spec, coef) {
    if (opt.t_ahead < 0) throw SpecError("t_ahead must be nonnegative");
    T = static_cast<Eigen::Index>(data.size());
    H = opt.t_ahead;
    const FilterOutput filt = filter_pass(spec, coef, data, 0);
    if (!filt.finite) throw EstimationError("in-sample filter left the parameter support");
    x_tv = rec.tv_regressors(data);
    const std::vector<int>& tv = rec.tv_params();
    for (std::size_t i = 0; i < tv.size(); ++i) {
      Matrix& x = x_tv[i];
      if (x.cols() == 0) {
        x = Matrix(T + H, 0);
        continue;
      }
      const auto p = static_cast<std::size_t>(tv[i]);
      if (opt.x_ahead.size() <= p || opt.x_ahead[p].rows() != H || opt.x_ahead[p].cols() != x.cols()) {
        throw DataError("regressor values must be provided for the " + std::to_string(H) + " forecast periods of '" +
                        spec.distr->param_names[p] + "'");
      }
      if (!opt.x_ahead[p].allFinite()) throw DataError("forecast regressors contain missing values");
      Matrix ext(T + H, x.cols());
      ext.topRows(T) = x;
      ext.bottomRows(H) = opt.x_ahead[p];
      x = std::move(ext);
    }
    f = stack(filt.par_tv, H);
    s = stack(filt.score_tv, H);
    e = stack(filt.err_tv, H);
    init = filt.par_tv.row(0).transpose();
    f_bar = filt.f_bar;
  }

  static ModelSpec synced(ModelSpec s, const SeriesData& data) {
    sync_regressor_counts(s, data);
    s.validate();
    return s;
  }

  void step(Eigen::Index t, Matrix& fm, const Matrix& sm, Matrix& em) const {
    if (t < rec.init_rows()) {
      rec.initialize(t, fm, em, init, f_bar);
    } else {
      rec.advance(t, fm, sm, em, x_tv);
    }
  }
};

ForecastResult empty_result(ForecastMethod method, const Continuation& c) {
  ForecastResult out;
  out.method = method;
  out.horizon = static_cast<int>(c.H);
  out.tv_params = c.rec.tv_params();
  out.y_mean = Vector::Zero(c.H);
  out.par_tv_ahead = Matrix::Zero(c.H, c.rec.tv_count());
  return out;
}

}  // namespace

ForecastResult forecast_mean_path(const ModelSpec& spec, const Vector& coef, const SeriesData& data,
                                  const ForecastOptions& options) {
  Continuation c(spec, coef, data, options);
  ForecastResult out = empty_result(ForecastMethod::mean_path, c);
  for (Eigen::Index h = 0; h < c.H; ++h) {
    const Eigen::Index t = c.T + h;
    c.step(t, c.f, c.s, c.e);
    const ParamVector nat = c.rec.natural(c.f, t);
    if (!c.rec.in_support(nat)) throw EstimationError("forecast left the parameter support at horizon " + std::to_string(h + 1));
    out.y_mean[h] = c.spec.distr->fn.mean(nat);
    out.par_tv_ahead.row(h) = c.f.row(t);
  }
  return out;
}

ForecastResult forecast_mean_path(const EstimationResult& est, const ForecastOptions& options) {
  return forecast_mean_path(est.spec, est.coef_est, est.data, options);
}

ForecastResult forecast_simulated_paths(const ModelSpec& spec, const Vector& coef, const SeriesData& data,
                                        const ForecastOptions& options) {
  if (options.rep_ahead < 1) throw SpecError("rep_ahead must be at least 1");
  const Continuation c(spec, coef, data, options);
  ForecastResult out = empty_result(ForecastMethod::simulated_paths, c);
  out.probs = options.quant;
  const auto rep = static_cast<std::size_t>(options.rep_ahead);
  const int k = c.rec.tv_count();
  out.y_paths = Matrix::Zero(static_cast<Eigen::Index>(rep), c.H);
  out.par_paths.assign(rep, Matrix());
  out.score_paths.assign(rep, Matrix());

  parallel_for(rep, options.jobs, [&](std::size_t r) {
    Rng rng = stream_rng(options.seed, r);
    for (int attempt = 0; attempt < kPathAttempts; ++attempt) {
      Matrix f = c.f;
      Matrix s = c.s;
      Matrix e = c.e;
      Vector y(c.H);
      bool ok = true;
      for (Eigen::Index h = 0; h < c.H && ok; ++h) {
        const Eigen::Index t = c.T + h;
        c.step(t, f, s, e);
        const ParamVector nat = c.rec.natural(f, t);
        if (!c.rec.in_support(nat)) {
          ok = false;
          break;
        }
        y[h] = c.rec.draw(nat, rng);
        const Recursion::Step st = c.rec.evaluate(y[h], nat);
        if (!st.finite) {
          ok = false;
          break;
        }
        for (int i = 0; i < k; ++i) s(t, i) = st.scaled[i];
      }
      if (!ok) continue;
      out.y_paths.row(static_cast<Eigen::Index>(r)) = y.transpose();
      out.par_paths[r] = f.bottomRows(c.H);
      out.score_paths[r] = s.bottomRows(c.H);
      return;
    }
    throw EstimationError("simulated forecast path " + std::to_string(r) + " left the parameter support " +
                          std::to_string(kPathAttempts) + " times");
  });

  if (c.H > 0) {
    const stats::ColumnSummary sum = stats::summarize_columns(out.y_paths, options.quant);
    out.y_mean = sum.mean;
    out.y_sd = sum.sd;
    out.y_quant = sum.quant;
    for (const Matrix& p : out.par_paths) out.par_tv_ahead += p;
    out.par_tv_ahead /= static_cast<double>(rep);
  } else {
    out.y_sd = Vector(0);
    out.y_quant = Matrix(0, static_cast<Eigen::Index>(options.quant.size()));
  }
  return out;
}

ForecastResult forecast_simulated_paths(const EstimationResult& est, const ForecastOptions& options) {
  return forecast_simulated_paths(est.spec, est.coef_est, est.data, options);
}

SimulationResult simulate_series(ModelSpec spec, const Vector& coef, int t_sim, std::uint64_t seed,
                                 const SimulateOptions& options) {
  if (t_sim < 0) throw SpecError("t_sim must be nonnegative");
  if (options.burn_in < 0) throw SpecError("burn_in must be nonnegative");
  if (!options.missing.empty() && options.missing.size() != static_cast<std::size_t>(t_sim)) {
    throw DataError("missing pattern must have t_sim entries");
  }
  const Eigen::Index burn = options.burn_in;
  const Eigen::Index n = burn + t_sim;

  SeriesData frame;
  frame.y.assign(static_cast<std::size_t>(n), kNaN);
  for (const Matrix& x : options.x_sim) {
    if (x.rows() == n || x.cols() == 0) {
      frame.x.push_back(x.cols() == 0 ? Matrix(n, 0) : x);
    } else if (x.rows() == t_sim && t_sim > 0) {
      Matrix ext(n, x.cols());
      ext.topRows(burn) = x.row(0).replicate(burn, 1);
      ext.bottomRows(t_sim) = x;
      frame.x.push_back(std::move(ext));
    } else {
      throw DataError("simulation regressors must have t_sim or burn_in + t_sim rows");
    }
  }
  sync_regressor_counts(spec, frame);
  spec.validate();
  const Recursion rec(spec, coef);
  const int k = rec.tv_count();

  SimulationResult out;
  out.tv_params = rec.tv_params();
  out.y_sim = Vector(t_sim);
  out.par_tv_sim = Matrix(t_sim, k);
  out.score_sim = Matrix(t_sim, k);
  if (n == 0) return out;

  const std::vector<Matrix> x_tv = rec.tv_regressors(frame);
  const std::vector<Vector> x_means = rec.tv_means(x_tv);
  Vector f_bar;
  if (spec.regress == Regress::sep || !spec.par_init) {
    f_bar = rec.long_term(x_means);
  } else {
    try {
      f_bar = rec.long_term(x_means);
    } catch (const SpecError&) {
      f_bar = Vector::Constant(k, kNaN);
    }
  }
  const Vector init = rec.initial(x_means);

  Rng rng = stream_rng(seed, 0);
  Matrix f = Matrix::Zero(n, k);
  Matrix s = Matrix::Zero(n, k);
  Matrix e = Matrix::Zero(n, k);
  Vector y(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    if (t < rec.init_rows()) {
      rec.initialize(t, f, e, init, f_bar);
    } else {
      rec.advance(t, f, s, e, x_tv);
    }
    const ParamVector nat = rec.natural(f, t);
    if (!rec.in_support(nat)) throw EstimationError("simulated parameters left the support at step " + std::to_string(t + 1));
    const bool skip = t >= burn && !options.missing.empty() && options.missing[static_cast<std::size_t>(t - burn)];
    y[t] = skip ? kNaN : rec.draw(nat, rng);
    const Recursion::Step st = rec.evaluate(y[t], nat);
    if (!st.finite) throw EstimationError("simulated score is not finite at step " + std::to_string(t + 1));
    for (int i = 0; i < k; ++i) s(t, i) = st.scaled[i];
  }
  out.y_sim = y.tail(t_sim);
  out.par_tv_sim = f.bottomRows(t_sim);
  out.score_sim = s.bottomRows(t_sim);
  return out;
}

}  // namespace gas
