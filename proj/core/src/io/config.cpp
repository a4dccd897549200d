// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/io/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "gas/errors.hpp"

namespace gas::io {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw SpecError("config key '" + key + "': " + what);
}

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  if (!parse_cell(v, out) || std::isnan(out)) bad(key, "'" + v + "' is not a number");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long out = std::stol(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  bad(key, "'" + v + "' is not an integer");
}

int to_count(const std::string& key, const std::string& v) {
  const long out = to_long(key, v);
  if (out < 0) bad(key, "must be nonnegative");
  return static_cast<int>(out);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "TRUE" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "FALSE" || v == "0" || v == "no") return false;
  bad(key, "'" + v + "' is not a boolean");
}

template <class T, class F>
std::vector<T> list_of(const std::string& key, const std::string& v, F convert) {
  std::vector<T> out;
  for (const std::string& item : split_list(v)) out.push_back(convert(key, item));
  if (out.empty()) bad(key, "empty list");
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt::format("{}", v[i]);
  return out;
}

std::string join_bools(const std::vector<bool>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += std::string(i ? ", " : "") + (v[i] ? "true" : "false");
  return out;
}

std::vector<int> per_param(const std::vector<int>& given, std::size_t k, const char* key) {
  if (given.size() == 1) return std::vector<int>(k, given[0]);
  if (given.size() != k) bad(key, "needs one value or one per parameter (" + std::to_string(k) + ")");
  return given;
}

int coefficient_index(const CoefLayout& layout, const std::string& section, const std::string& name) {
  const int idx = layout.index_of(name);
  if (idx < 0) throw SpecError("config key '" + section + "." + name + "': unknown coefficient");
  return idx;
}

void read_pairs(const pt::ptree& sec, const std::string& section, std::vector<std::pair<std::string, double>>& out) {
  for (const auto& [key, node] : sec) out.emplace_back(key, to_real(section + "." + key, trim(node.data())));
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw SpecError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  RunConfig cfg;
  for (const auto& [section, sec] : tree) {
    if (!sec.data().empty()) throw SpecError("config key '" + section + "': keys must belong to a section");
    if (section == "fix_value" || section == "bound_lower" || section == "bound_upper" || section == "coefficients") {
      auto& dest = section == "fix_value"     ? cfg.fix_value
                   : section == "bound_lower" ? cfg.bound_lower
                   : section == "bound_upper" ? cfg.bound_upper
                                              : cfg.coefficients;
      read_pairs(sec, section, dest);
      continue;
    }
    if (section == "fix_other") {
      for (const auto& [key, node] : sec) {
        const std::string full = "fix_other." + key;
        for (const std::string& item : split_list(node.data())) {
          NamedTie tie{key, item, 1.0};
          const auto star = item.find('*');
          if (star != std::string::npos) {
            tie.estimated = trim(item.substr(0, star));
            tie.multiplier = to_real(full, trim(item.substr(star + 1)));
          }
          cfg.fix_other.push_back(tie);
        }
      }
      continue;
    }
    for (const auto& [key, node] : sec) {
      const std::string full = section + "." + key;
      const std::string v = trim(node.data());
      if (section == "model") {
        if (key == "distr") cfg.distr = v;
        else if (key == "param") cfg.param = v;
        else if (key == "scaling") {
          const auto s = parse_scaling(v);
          if (!s) bad(full, "unknown scaling '" + v + "'");
          cfg.scaling = *s;
        } else if (key == "regress") {
          const auto r = parse_regress(v);
          if (!r) bad(full, "unknown regress '" + v + "'");
          cfg.regress = *r;
        } else if (key == "p") cfg.p = list_of<int>(full, v, to_count);
        else if (key == "q") cfg.q = list_of<int>(full, v, to_count);
        else if (key == "par_static") cfg.par_static = list_of<bool>(full, v, to_bool);
        else if (key == "par_link") cfg.par_link = list_of<bool>(full, v, to_bool);
        else if (key == "par_init") cfg.par_init = list_of<double>(full, v, to_real);
        else if (key == "special") {
          for (const std::string& item : split_list(v)) {
            const auto s = parse_special(item);
            if (!s) bad(full, "unknown structure '" + item + "'");
            cfg.special.push_back(*s);
          }
        } else bad(full, "unknown key");
      } else if (section == "data") {
        if (key == "y") cfg.y_column = v;
        else if (key == "time") cfg.time_column = v;
        else if (key == "x") cfg.x_all = split_list(v);
        else if (key.rfind("x.", 0) == 0 && key.size() > 2) cfg.x_param[key.substr(2)] = split_list(v);
        else if (key == "x_ahead") cfg.x_ahead_path = v;
        else bad(full, "unknown key");
      } else if (section == "estimation") {
        if (key == "lik_skip") cfg.lik_skip = to_count(full, v);
        else if (key == "conditional") cfg.conditional = to_bool(full, v);
        else if (key == "coef_start") cfg.coef_start = list_of<double>(full, v, to_real);
        else if (key == "max_eval") cfg.max_eval = to_long(full, v);
        else if (key == "xtol") cfg.xtol = to_real(full, v);
        else if (key == "restarts") cfg.restarts = to_count(full, v);
        else bad(full, "unknown key");
      } else if (section == "task") {
        if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(full, v));
        else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::max(1, to_count(full, v)));
        else if (key == "t_sim") cfg.t_sim = to_count(full, v);
        else if (key == "burn_in") cfg.burn_in = to_count(full, v);
        else if (key == "t_ahead") cfg.t_ahead = to_count(full, v);
        else if (key == "rep_boot") cfg.rep_boot = to_count(full, v);
        else if (key == "rep_ahead") cfg.rep_ahead = to_count(full, v);
        else if (key == "rep_gen") cfg.rep_gen = to_count(full, v);
        else if (key == "method") cfg.method = v;
        else if (key == "block_length") cfg.block_length = to_real(full, v);
        else if (key == "quant") {
          cfg.quant = list_of<double>(full, v, to_real);
          for (double p : cfg.quant) {
            if (p < 0.0 || p > 1.0) bad(full, "probabilities must lie in [0, 1]");
          }
        } else bad(full, "unknown key");
      } else {
        throw SpecError("config section '[" + section + "]' is not recognized");
      }
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

ModelSpec RunConfig::model_spec() const {
  if (distr.empty()) throw SpecError("config key 'model.distr' is required");
  ModelSpec spec = ModelSpec::make(distr, param);
  const auto k = static_cast<std::size_t>(spec.param_count());
  spec.scaling = scaling;
  spec.regress = regress;
  if (!p.empty()) spec.p = per_param(p, k, "model.p");
  if (!q.empty()) spec.q = per_param(q, k, "model.q");
  if (!par_static.empty()) {
    if (par_static.size() != k) bad("model.par_static", "needs one value per parameter (" + std::to_string(k) + ")");
    spec.par_static = par_static;
    spec.reset_links();
  }
  if (!par_link.empty()) {
    if (par_link.size() != k) bad("model.par_link", "needs one value per parameter (" + std::to_string(k) + ")");
    spec.par_link = par_link;
  }
  if (!par_init.empty()) {
    if (par_init.size() != k) bad("model.par_init", "needs one value per parameter (" + std::to_string(k) + ")");
    spec.par_init = par_init;
  }
  try {
    spec.validate();
  } catch (const SpecError& e) {
    throw SpecError(std::string("config section '[model]': ") + e.what());
  }
  return spec;
}

ConstraintSpec RunConfig::constraints(const ModelSpec& spec) const {
  const CoefLayout layout(spec);
  const auto n = static_cast<std::size_t>(layout.size());
  ConstraintSpec out;
  out.special = special;
  auto fill = [&](const std::vector<std::pair<std::string, double>>& src, const std::string& section,
                  std::vector<std::optional<double>>& dest) {
    if (src.empty()) return;
    dest.assign(n, std::nullopt);
    for (const auto& [name, value] : src) dest[static_cast<std::size_t>(coefficient_index(layout, section, name))] = value;
  };
  fill(fix_value, "fix_value", out.fix_value);
  fill(bound_lower, "bound_lower", out.lower);
  fill(bound_upper, "bound_upper", out.upper);
  for (const NamedTie& t : fix_other) {
    out.fix_other.push_back({coefficient_index(layout, "fix_other", t.fixed),
                             coefficient_index(layout, "fix_other", t.estimated), t.multiplier});
  }
  if (!out.fix_other.empty() && out.fix_value.empty()) {
    throw SpecError("config section '[fix_other]': tied coefficients need a base value in [fix_value]");
  }
  return out;
}

EstimationOptions RunConfig::estimation_options() const {
  EstimationOptions o;
  o.lik_skip = lik_skip;
  o.conditional = conditional;
  if (!coef_start.empty()) o.coef_start = Eigen::Map<const Vector>(coef_start.data(), static_cast<Eigen::Index>(coef_start.size()));
  o.optim.max_eval = max_eval;
  o.optim.xtol_abs = xtol;
  o.optim.restarts = restarts;
  return o;
}

std::optional<Vector> RunConfig::coefficient_vector(const ModelSpec& spec) const {
  if (coefficients.empty()) return std::nullopt;
  const CoefLayout layout(spec);
  Vector out = Vector::Constant(layout.size(), kNaN);
  for (const auto& [name, value] : coefficients) out[coefficient_index(layout, "coefficients", name)] = value;
  for (int i = 0; i < layout.size(); ++i) {
    if (std::isnan(out[i])) {
      throw SpecError("config section '[coefficients]': missing coefficient '" + layout.names()[static_cast<std::size_t>(i)] + "'");
    }
  }
  return out;
}

std::vector<Matrix> RunConfig::regressors(const DataTable& table, const ModelSpec& spec) const {
  if (!has_regressors()) return {};
  const auto k = static_cast<std::size_t>(spec.param_count());
  const auto T = static_cast<Eigen::Index>(table.rows());
  std::vector<std::vector<std::string>> cols(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (spec.time_varying(static_cast<int>(i))) cols[i] = x_all;
  }
  for (const auto& [pname, names] : x_param) {
    const auto& pn = spec.distr->param_names;
    const auto it = std::find(pn.begin(), pn.end(), pname);
    if (it == pn.end()) bad("data.x." + pname, "unknown parameter");
    auto& dst = cols[static_cast<std::size_t>(it - pn.begin())];
    dst.insert(dst.end(), names.begin(), names.end());
  }
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) {
    Matrix x(T, static_cast<Eigen::Index>(cols[i].size()));
    for (std::size_t c = 0; c < cols[i].size(); ++c) {
      const std::vector<double> v = table.numeric(cols[i][c]);
      for (Eigen::Index t = 0; t < T; ++t) {
        if (std::isnan(v[static_cast<std::size_t>(t)])) {
          throw DataError(table.source() + ": row " + std::to_string(t + 1) + ", column '" + cols[i][c] +
                          "': regressors may not be missing");
        }
        x(t, static_cast<Eigen::Index>(c)) = v[static_cast<std::size_t>(t)];
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

SeriesData RunConfig::series(const DataTable& table, const ModelSpec& spec) const {
  std::string column = y_column;
  if (column.empty()) {
    if (table.names().empty()) throw DataError(table.source() + ": no columns");
    column = table.has("y") ? "y" : table.names().front();
  }
  SeriesData data;
  data.y = table.numeric(column);
  data.x = regressors(table, spec);
  return data;
}

void RunConfig::echo(ResultDocument& doc) const {
  ResultSection& s = doc.section("config");
  s.set("distr", distr);
  s.set("param", param);
  s.set("scaling", std::string(to_string(scaling)));
  s.set("regress", std::string(to_string(regress)));
  if (!p.empty()) s.set("p", join(p));
  if (!q.empty()) s.set("q", join(q));
  if (!par_static.empty()) s.set("par_static", join_bools(par_static));
  if (!par_link.empty()) s.set("par_link", join_bools(par_link));
  if (!par_init.empty()) s.set("par_init", join_reals(par_init));
  if (!special.empty()) {
    std::string v;
    for (std::size_t i = 0; i < special.size(); ++i) v += (i ? ", " : "") + std::string(to_string(special[i]));
    s.set("special", v);
  }
  if (!y_column.empty()) s.set("y", y_column);
  if (!x_all.empty()) s.set("x", join(x_all));
  for (const auto& [pname, names] : x_param) s.set("x." + pname, join(names));
  s.set("lik_skip", lik_skip);
  s.set("conditional", conditional);
  s.set("seed", static_cast<long>(seed));
  s.set("quant", join_reals(quant));
  for (const auto& [name, value] : fix_value) s.set("fix_value." + name, value);
  for (const NamedTie& t : fix_other) s.set("fix_other." + t.fixed, t.estimated + " * " + format_real(t.multiplier));
  for (const auto& [name, value] : bound_lower) s.set("bound_lower." + name, value);
  for (const auto& [name, value] : bound_upper) s.set("bound_upper." + name, value);
}

}  // namespace gas::io
