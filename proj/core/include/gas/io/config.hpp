// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gas/estimation.hpp"
#include "gas/io/data.hpp"
#include "gas/io/results.hpp"
#include "gas/uncertainty.hpp"

namespace gas::io {

// One tie of the [fix_other] section, by coefficient name.
struct NamedTie {
  std::string fixed;
  std::string estimated;
  double multiplier = 0.0;
};

// Run configuration read from an INI file. Sections:
//   [model]        distr, param, scaling, regress, p, q, par_static, par_link, par_init, special
//   [data]         y, time, x (all time-varying parameters), x.<parameter>, x_ahead
//   [fix_value]    <coefficient> = value
//   [fix_other]    <fixed coefficient> = <estimated coefficient> * multiplier, ...
//   [bound_lower], [bound_upper]  <coefficient> = value
//   [estimation]   lik_skip, conditional, coef_start, max_eval, xtol, restarts
//   [task]         seed, jobs, t_sim, burn_in, t_ahead, rep_boot, rep_ahead, rep_gen,
//                  method, block_length, quant
//   [coefficients] <coefficient> = value
// Lists are comma separated. Unknown sections and keys are rejected.
struct RunConfig {
  std::string distr;
  std::string param;
  Scaling scaling = Scaling::unit;
  Regress regress = Regress::joint;
  std::vector<int> p;  // one entry for all parameters or one per parameter
  std::vector<int> q;
  std::vector<bool> par_static;
  std::vector<bool> par_link;
  std::vector<double> par_init;
  std::vector<SpecialStructure> special;

  std::string y_column;
  std::string time_column;
  std::vector<std::string> x_all;
  std::map<std::string, std::vector<std::string>> x_param;
  std::string x_ahead_path;

  std::vector<std::pair<std::string, double>> fix_value;
  std::vector<NamedTie> fix_other;
  std::vector<std::pair<std::string, double>> bound_lower;
  std::vector<std::pair<std::string, double>> bound_upper;

  int lik_skip = 0;
  bool conditional = false;
  std::vector<double> coef_start;
  long max_eval = 1'000'000;
  double xtol = 1e-10;
  int restarts = 2;

  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::optional<int> t_sim;
  int burn_in = 0;
  int t_ahead = 0;
  int rep_boot = 1000;
  int rep_ahead = 1000;
  int rep_gen = 1000;
  std::string method;
  std::optional<double> block_length;
  std::vector<double> quant = kDefaultQuant;

  std::vector<std::pair<std::string, double>> coefficients;

  // Throws SpecError naming the offending key.
  ModelSpec model_spec() const;
  ConstraintSpec constraints(const ModelSpec& spec) const;
  EstimationOptions estimation_options() const;
  // Coefficient vector from [coefficients]; nullopt when the section is absent.
  std::optional<Vector> coefficient_vector(const ModelSpec& spec) const;

  // Series and regressors from a table per the [data] mapping.
  SeriesData series(const DataTable& table, const ModelSpec& spec) const;
  // Regressors only (forecast periods, simulation inputs).
  std::vector<Matrix> regressors(const DataTable& table, const ModelSpec& spec) const;
  bool has_regressors() const { return !x_all.empty() || !x_param.empty(); }

  void echo(ResultDocument& doc) const;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

}  // namespace gas::io
