// Apache License, Version 2.0, refer to LICENSE.txt

#include "cli.hpp"

#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gas/distribution.hpp"
#include "gas/errors.hpp"
#include "gas/io/config.hpp"
#include "gas/io/data.hpp"
#include "gas/io/results.hpp"
#include "gas/stats.hpp"

namespace gas::cli {

namespace {

struct Flags {
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  bool progress = false;
  bool emit_samples = false;
  bool vcov = false;
  std::optional<int> t_sim;
  std::optional<int> t_ahead;
  std::string method;
  std::optional<int> rep;
  std::string type;
  bool defaults_only = false;
};

// Input problems found before any computation starts.
struct UsageError : Error {
  using Error::Error;
};

std::string num(double v) { return std::isnan(v) ? "NA" : fmt::format("{:.7g}", v); }

struct Session {
  const Flags& flags;
  std::ostream& out;
  std::ostream& err;
  io::RunConfig cfg;
  ModelSpec spec;
  SeriesData data;
  io::DataTable table;
  ConstraintSpec constraints;

  Session(const Flags& f, std::ostream& o, std::ostream& e, bool need_data) : flags(f), out(o), err(e) {
    try {
      if (flags.config.empty()) throw UsageError("--config is required");
      cfg = io::parse_config_file(flags.config);
      if (flags.seed) cfg.seed = *flags.seed;
      if (flags.jobs) cfg.jobs = std::max(1u, *flags.jobs);
      if (flags.t_sim) cfg.t_sim = *flags.t_sim;
      if (flags.t_ahead) cfg.t_ahead = *flags.t_ahead;
      if (!flags.method.empty()) cfg.method = flags.method;
      spec = cfg.model_spec();
      if (need_data && flags.data.empty()) throw UsageError("--data is required");
      if (!flags.data.empty()) {
        table = io::parse_data(flags.data);
        data = cfg.series(table, spec);
        sync_regressor_counts(spec, data);
      }
      constraints = cfg.constraints(spec);
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  EstimationOptions options() const {
    EstimationOptions o = cfg.estimation_options();
    if (flags.progress) o.progress = &err;
    return o;
  }

  // Estimates, or evaluates at [coefficients] when the config supplies them.
  EstimationResult fit() const {
    std::optional<Vector> coef;
    try {
      coef = cfg.coefficient_vector(spec);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (coef) return evaluate_at(data, spec, *coef, constraints, options());
    return estimate(data, spec, constraints, options());
  }

  std::vector<Matrix> x_ahead() const {
    if (!cfg.has_regressors() || cfg.t_ahead == 0) return {};
    if (cfg.x_ahead_path.empty()) {
      throw UsageError("config key 'data.x_ahead' must name a file with regressors for the forecast period");
    }
    try {
      return cfg.regressors(io::parse_data(cfg.x_ahead_path), spec);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  void save(const io::ResultDocument& doc) const {
    if (!flags.out.empty()) io::write_results(doc, flags.out);
  }
};

int cmd_distr(const Flags& flags, std::ostream& out) {
  std::optional<DataType> type;
  if (!flags.type.empty()) {
    type = parse_data_type(flags.type);
    if (!type) throw UsageError("unknown data type '" + flags.type + "'");
  }
  std::optional<bool> def;
  if (flags.defaults_only) def = true;
  out << fmt::format("{:<10} {:<10} {:<10} {:<28} {}\n", "distr", "param", "type", "parameters", "default");
  for (const DistributionDescriptor* d : list_distributions(type, def)) {
    std::string params;
    for (std::size_t i = 0; i < d->param_names.size(); ++i) params += (i ? ", " : "") + d->param_names[i];
    out << fmt::format("{:<10} {:<10} {:<10} {:<28} {}\n", d->label, d->parametrization, to_string(d->data_type), params,
                       d->is_default ? "yes" : "no");
  }
  return kSuccess;
}

int cmd_estimate(const Session& s) {
  const EstimationResult est = s.fit();
  s.out << io::format_summary(est);
  io::ResultDocument doc;
  s.cfg.echo(doc);
  io::add_estimation(doc, est, s.flags.vcov);
  s.save(doc);
  return kSuccess;
}

void print_forecast(std::ostream& out, const ForecastResult& fc, std::size_t T) {
  out << "Forecast (" << to_string(fc.method) << ", horizon " << fc.horizon << "):\n";
  std::string head = fmt::format("{:>8} {:>14}", "t", "Mean");
  const bool sim = fc.method == ForecastMethod::simulated_paths;
  if (sim) {
    head += fmt::format(" {:>14}", "Std. Dev.");
    for (double p : fc.probs) head += fmt::format(" {:>14}", fmt::format("{:g}%", 100.0 * p));
  }
  out << head << '\n';
  for (int h = 0; h < fc.horizon; ++h) {
    std::string row = fmt::format("{:>8} {:>14}", T + static_cast<std::size_t>(h) + 1, num(fc.y_mean[h]));
    if (sim) {
      row += fmt::format(" {:>14}", num(fc.y_sd[h]));
      for (Eigen::Index q = 0; q < fc.y_quant.cols(); ++q) row += fmt::format(" {:>14}", num(fc.y_quant(h, q)));
    }
    out << row << '\n';
  }
}

int cmd_forecast(const Session& s) {
  std::string method = s.cfg.method.empty() ? "mean_path" : s.cfg.method;
  const auto m = parse_forecast_method(method);
  if (!m) throw UsageError("unknown forecast method '" + method + "'");
  ForecastOptions fo;
  fo.t_ahead = s.cfg.t_ahead;
  fo.x_ahead = s.x_ahead();
  fo.rep_ahead = s.flags.rep.value_or(s.cfg.rep_ahead);
  fo.quant = s.cfg.quant;
  fo.seed = s.cfg.seed;
  fo.jobs = s.cfg.jobs;
  const EstimationResult est = s.fit();
  const ForecastResult fc = *m == ForecastMethod::mean_path ? forecast_mean_path(est, fo) : forecast_simulated_paths(est, fo);
  s.out << io::format_summary(est) << '\n';
  print_forecast(s.out, fc, est.data.size());
  io::ResultDocument doc;
  s.cfg.echo(doc);
  io::add_estimation(doc, est, s.flags.vcov);
  io::add_forecast(doc, est.spec, fc, est.data.size());
  s.save(doc);
  return kSuccess;
}

int cmd_simulate(Session& s) {
  std::optional<Vector> coef;
  try {
    coef = s.cfg.coefficient_vector(s.spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!coef) throw UsageError("config section '[coefficients]' is required for simulation");
  SimulateOptions so;
  so.burn_in = s.cfg.burn_in;
  so.x_sim = s.data.x;
  int t_sim = 0;
  if (s.cfg.t_sim) {
    t_sim = *s.cfg.t_sim;
  } else if (!s.flags.data.empty()) {
    t_sim = static_cast<int>(s.data.size());
  } else {
    throw UsageError("--t-sim (or config key 'task.t_sim') is required");
  }
  const SimulationResult sim = simulate_series(s.spec, *coef, t_sim, s.cfg.seed, so);

  std::vector<std::pair<std::string, std::vector<double>>> extra;
  std::set<std::string> seen;
  auto add_column = [&](const std::string& name) {
    if (!seen.insert(name).second) return;
    std::vector<double> v = s.table.numeric(name);
    v.erase(v.begin(), v.end() - t_sim);
    extra.emplace_back(name, std::move(v));
  };
  if (!s.flags.data.empty()) {
    for (const auto& c : s.cfg.x_all) add_column(c);
    for (const auto& [p, cols] : s.cfg.x_param) {
      for (const auto& c : cols) add_column(c);
    }
  }

  s.out << "GAS Model: " << describe(s.spec) << "\n";
  std::vector<double> y(sim.y_sim.data(), sim.y_sim.data() + sim.y_sim.size());
  s.out << "Simulated " << t_sim << " observations (seed " << s.cfg.seed << "), mean " << num(stats::mean(y))
        << ", sd " << num(stats::sd(y)) << '\n';
  io::ResultDocument doc;
  s.cfg.echo(doc);
  io::add_model(doc, s.spec);
  io::add_simulation(doc, s.spec, sim, extra);
  s.save(doc);
  return kSuccess;
}

int cmd_bootstrap(const Session& s) {
  const std::string method = s.cfg.method.empty() ? "parametric" : s.cfg.method;
  const auto m = parse_boot_method(method);
  if (!m) throw UsageError("unknown bootstrap method '" + method + "'");
  BootstrapOptions bo;
  bo.method = *m;
  bo.rep_boot = s.flags.rep.value_or(s.cfg.rep_boot);
  bo.block_length = s.cfg.block_length;
  bo.quant = s.cfg.quant;
  bo.seed = s.cfg.seed;
  bo.jobs = s.cfg.jobs;
  if (s.flags.progress) bo.progress = &s.err;
  if (*m != BootMethod::parametric) {
    try {
      block_indices(*m, s.data.size(), bo.block_length, 0);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  const EstimationResult est = s.fit();
  const BootstrapResult boot = bootstrap(est, bo);
  s.out << io::format_summary(est) << '\n';
  s.out << "Bootstrap (" << method << ", " << boot.coef_samples.rows() << " replicates, " << boot.failures
        << " failed):\n";
  std::size_t width = 0;
  for (const auto& n : est.names()) width = std::max(width, n.size());
  std::string head = fmt::format("{:<{}}  {:>13}  {:>13}", "", width, "Mean", "Std. Dev.");
  for (double p : boot.probs) head += fmt::format("  {:>13}", fmt::format("{:g}%", 100.0 * p));
  s.out << head << '\n';
  for (std::size_t i = 0; i < est.names().size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    std::string row = fmt::format("{:<{}}  {:>13}  {:>13}", est.names()[i], width, num(boot.coef_mean[e]), num(boot.coef_sd[e]));
    for (Eigen::Index q = 0; q < boot.coef_quant.cols(); ++q) row += fmt::format("  {:>13}", num(boot.coef_quant(e, q)));
    s.out << row << '\n';
  }
  io::ResultDocument doc;
  s.cfg.echo(doc);
  io::add_estimation(doc, est, s.flags.vcov);
  io::add_bootstrap(doc, est.names(), boot, s.flags.emit_samples);
  s.save(doc);
  return kSuccess;
}

int cmd_filter(const Session& s) {
  const bool given = !s.cfg.coefficients.empty();
  const std::string method = !s.cfg.method.empty() ? s.cfg.method : given ? "given_coefs" : "simulated_coefs";
  const auto m = parse_uncertainty_method(method);
  if (!m) throw UsageError("unknown filter method '" + method + "'");
  FilterUncertaintyOptions fo;
  fo.method = *m;
  fo.rep_gen = s.flags.rep.value_or(s.cfg.rep_gen);
  fo.t_ahead = s.cfg.t_ahead;
  fo.x_ahead = s.x_ahead();
  fo.rep_ahead = s.cfg.rep_ahead;
  fo.quant = s.cfg.quant;
  fo.seed = s.cfg.seed;
  fo.jobs = s.cfg.jobs;
  const EstimationResult est = s.fit();
  if (*m == UncertaintyMethod::given_coefs) fo.coef_set = est.coef_est.transpose();
  const FilterUncertainty fu = filter_uncertainty(est, fo);

  s.out << io::format_summary(est) << '\n';
  s.out << "Filtered parameters (" << method << ", " << fu.sets << " coefficient sets):\n";
  const std::vector<std::string> labels = io::tv_labels(est.spec);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    double width = kNaN;
    if (fu.par_tv_quant.size() >= 2) {
      width = (fu.par_tv_quant.back().col(c) - fu.par_tv_quant.front().col(c)).mean();
    }
    s.out << fmt::format("{}: mean {}, average band width {}\n", labels[j], num(fu.par_tv_mean.col(c).mean()), num(width));
  }
  io::ResultDocument doc;
  s.cfg.echo(doc);
  io::add_estimation(doc, est, s.flags.vcov);
  io::add_filter_uncertainty(doc, est.spec, fu);
  s.save(doc);
  return kSuccess;
}

void add_common(CLI::App* cmd, Flags& f, bool data_required) {
  cmd->add_option("--config", f.config, "model configuration (INI)")->required();
  auto* data = cmd->add_option("--data", f.data, "CSV data or a result file with a simulation table");
  if (data_required) data->required();
  cmd->add_option("--out", f.out, "result file to write");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_flag("--progress", f.progress, "report optimizer progress on stderr");
  cmd->add_flag("--vcov", f.vcov, "write the coefficient covariance matrix");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score-driven (GAS) time series models"};
  app.name("gas");
  app.require_subcommand(1);
  Flags f;

  auto* estimate_cmd = app.add_subcommand("estimate", "estimate coefficients");
  add_common(estimate_cmd, f, true);

  auto* forecast_cmd = app.add_subcommand("forecast", "forecast past the sample");
  add_common(forecast_cmd, f, true);
  forecast_cmd->add_option("--t-ahead", f.t_ahead, "forecast horizon");
  forecast_cmd->add_option("--method", f.method, "mean_path or simulated_paths");
  forecast_cmd->add_option("--rep", f.rep, "simulated paths");

  auto* simulate_cmd = app.add_subcommand("simulate", "simulate a series from given coefficients");
  add_common(simulate_cmd, f, false);
  simulate_cmd->add_option("--t-sim", f.t_sim, "series length");

  auto* bootstrap_cmd = app.add_subcommand("bootstrap", "bootstrap coefficient uncertainty");
  add_common(bootstrap_cmd, f, true);
  bootstrap_cmd->add_option("--method", f.method, "parametric, simple_block, moving_block or stationary_block");
  bootstrap_cmd->add_option("--rep", f.rep, "replicates");
  bootstrap_cmd->add_flag("--emit-samples", f.emit_samples, "write every replicate's coefficients");

  auto* filter_cmd = app.add_subcommand("filter", "uncertainty of the filtered parameters");
  add_common(filter_cmd, f, true);
  filter_cmd->add_option("--method", f.method, "given_coefs or simulated_coefs");
  filter_cmd->add_option("--rep", f.rep, "coefficient draws");
  filter_cmd->add_option("--t-ahead", f.t_ahead, "forecast horizon");

  auto* distr_cmd = app.add_subcommand("distr", "list available distributions");
  distr_cmd->add_option("--type", f.type, "binary, count, integer, real, duration or circular");
  distr_cmd->add_flag("--default", f.defaults_only, "default parametrizations only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "gas: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (distr_cmd->parsed()) return cmd_distr(f, out);
    if (simulate_cmd->parsed()) {
      Session s(f, out, err, false);
      return cmd_simulate(s);
    }
    const Session s(f, out, err, true);
    if (estimate_cmd->parsed()) return cmd_estimate(s);
    if (forecast_cmd->parsed()) return cmd_forecast(s);
    if (bootstrap_cmd->parsed()) return cmd_bootstrap(s);
    if (filter_cmd->parsed()) return cmd_filter(s);
  } catch (const UsageError& e) {
    err << "gas: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "gas: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace gas::cli
