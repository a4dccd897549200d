// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/io/results.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gas/errors.hpp"
#include "gas/io/data.hpp"

namespace gas::io {

std::string format_real(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return fmt::format("{:.17g}", v);
}

namespace {

std::string quote_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string summary_real(double v) {
  if (std::isnan(v)) return "NA";
  return fmt::format("{:.7g}", v);
}

std::string prob_label(double p) { return fmt::format("q{:g}", p); }

}  // namespace

void ResultSection::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries.emplace_back(key, value);
}

void ResultSection::set(const std::string& key, double value) { set(key, format_real(value)); }
void ResultSection::set(const std::string& key, long value) { set(key, std::to_string(value)); }
void ResultSection::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

const std::string* ResultSection::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

double ResultSection::real(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw DataError("section [" + name + "] has no key '" + key + "'");
  double out = 0.0;
  if (!parse_cell(*v, out)) throw DataError("section [" + name + "], key '" + key + "': not a number");
  return out;
}

int ResultTable::column_index(const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

std::vector<double> ResultTable::numeric(const std::string& column) const {
  const int c = column_index(column);
  if (c < 0) throw DataError("table [[" + name + "]] has no column '" + column + "'");
  std::vector<double> out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!parse_cell(rows[r][static_cast<std::size_t>(c)], out[r])) {
      throw DataError("table [[" + name + "]], row " + std::to_string(r + 1) + ", column '" + column + "': not a number");
    }
  }
  return out;
}

std::vector<std::string> ResultTable::text(const std::string& column) const {
  const int c = column_index(column);
  if (c < 0) throw DataError("table [[" + name + "]] has no column '" + column + "'");
  std::vector<std::string> out;
  for (const auto& row : rows) out.push_back(row[static_cast<std::size_t>(c)]);
  return out;
}

ResultSection& ResultDocument::section(const std::string& name) {
  for (auto& s : sections_) {
    if (s.name == name) return s;
  }
  sections_.push_back({name, {}});
  order_.push_back({false, sections_.size() - 1});
  return sections_.back();
}

ResultTable& ResultDocument::table(const std::string& name, std::vector<std::string> columns) {
  for (auto& t : tables_) {
    if (t.name == name) throw Error("duplicate result table '" + name + "'");
  }
  tables_.push_back({name, std::move(columns), {}});
  order_.push_back({true, tables_.size() - 1});
  return tables_.back();
}

const ResultSection* ResultDocument::find_section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const ResultTable* ResultDocument::table(const std::string& name) const {
  for (const auto& t : tables_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

void ResultDocument::write(std::ostream& out) const {
  bool first = true;
  for (const Entry& e : order_) {
    if (!first) out << '\n';
    first = false;
    if (!e.is_table) {
      const ResultSection& s = sections_[e.index];
      out << '[' << s.name << "]\n";
      for (const auto& [k, v] : s.entries) out << k << " = " << v << '\n';
      continue;
    }
    const ResultTable& t = tables_[e.index];
    out << "[[" << t.name << "]]\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << quote_cell(t.columns[c]);
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << quote_cell(row[c]);
      out << '\n';
    }
  }
}

std::string ResultDocument::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

ResultDocument ResultDocument::parse(std::istream& in, const std::string& source) {
  ResultDocument doc;
  std::string line;
  int lineno = 0;
  ResultSection* section = nullptr;
  ResultTable* table = nullptr;
  bool need_header = false;
  // Table rows are collected as text and split like CSV data.
  std::ostringstream table_text;
  auto flush_table = [&] {
    if (!table) return;
    std::istringstream tin(table_text.str());
    const DataTable parsed = parse_csv(tin, source + " [[" + table->name + "]]");
    table->columns = parsed.names();
    for (std::size_t r = 0; r < parsed.rows(); ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < parsed.names().size(); ++c) row.push_back(parsed.cell(r, c));
      table->rows.push_back(std::move(row));
    }
    table = nullptr;
    table_text.str({});
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) {
      if (need_header) throw DataError(source + ": line " + std::to_string(lineno) + ": table header expected");
      continue;
    }
    if (t.rfind("[[", 0) == 0) {
      flush_table();
      if (t.size() < 5 || t.substr(t.size() - 2) != "]]") {
        throw DataError(source + ": line " + std::to_string(lineno) + ": malformed table heading");
      }
      section = nullptr;
      doc.tables_.push_back({t.substr(2, t.size() - 4), {}, {}});
      doc.order_.push_back({true, doc.tables_.size() - 1});
      table = &doc.tables_.back();
      need_header = true;
      continue;
    }
    if (t.front() == '[') {
      flush_table();
      if (t.back() != ']') throw DataError(source + ": line " + std::to_string(lineno) + ": malformed section heading");
      section = &doc.section(t.substr(1, t.size() - 2));
      continue;
    }
    if (table) {
      table_text << line << '\n';
      need_header = false;
      continue;
    }
    const auto eq = t.find('=');
    if (!section || eq == std::string::npos) {
      throw DataError(source + ": line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    section->entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  flush_table();
  return doc;
}

void write_results(const ResultDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open result file '" + path + "' for writing");
  doc.write(out);
  out.flush();
  if (!out) throw DataError("failed writing result file '" + path + "'");
}

ResultDocument read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open result file '" + path + "'");
  return ResultDocument::parse(in, path);
}

std::vector<std::string> tv_labels(const ModelSpec& spec) {
  const LinkSet links = spec.links();
  std::vector<std::string> out;
  for (int p : spec.tv_params()) out.push_back(links.wrap_name(p, spec.distr->param_names[static_cast<std::size_t>(p)]));
  return out;
}

void add_model(ResultDocument& doc, const ModelSpec& spec) {
  ResultSection& s = doc.section("model");
  s.set("distribution", spec.distr->label);
  s.set("parametrization", spec.distr->parametrization);
  s.set("scaling", std::string(to_string(spec.scaling)));
  s.set("regress", std::string(to_string(spec.regress)));
  s.set("description", describe(spec));
}

void add_estimation(ResultDocument& doc, const EstimationResult& est, bool with_vcov) {
  add_model(doc, est.spec);
  ResultSection& s = doc.section("estimation");
  s.set("loglik", est.loglik);
  s.set("aic", est.aic);
  s.set("bic", est.bic);
  s.set("k_free", est.k_free);
  s.set("t_eff", est.t_eff);
  s.set("t", static_cast<long>(est.data.size()));
  s.set("lik_skip", est.lik_skip);
  s.set("evaluations", est.optim.evaluations);
  s.set("converged", est.optim.converged);
  s.set("hessian_ok", est.hessian_ok);
  s.set("degenerate", est.degenerate);

  ResultTable& t = doc.table("coefficients", {"name", "estimate", "std_error", "z_test", "p_value", "fixed"});
  for (int i = 0; i < est.structure.size(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    t.rows.push_back({est.names()[u], format_real(est.coef_est[i]), format_real(est.coef_sd[i]),
                      format_real(est.z_stat[i]), format_real(est.p_value[i]), est.structure.fixed[u] ? "1" : "0"});
  }
  if (with_vcov) {
    std::vector<std::string> cols{"name"};
    cols.insert(cols.end(), est.names().begin(), est.names().end());
    ResultTable& v = doc.table("vcov", cols);
    for (Eigen::Index i = 0; i < est.coef_vcov.rows(); ++i) {
      std::vector<std::string> row{est.names()[static_cast<std::size_t>(i)]};
      for (Eigen::Index j = 0; j < est.coef_vcov.cols(); ++j) row.push_back(format_real(est.coef_vcov(i, j)));
      v.rows.push_back(std::move(row));
    }
  }
  add_filter(doc, est.spec, est.filter);
}

void add_filter(ResultDocument& doc, const ModelSpec& spec, const FilterOutput& filter) {
  const std::vector<std::string> labels = tv_labels(spec);
  std::vector<std::string> cols{"t"};
  for (const auto& l : labels) cols.push_back("par_" + l);
  for (const auto& l : labels) cols.push_back("score_" + l);
  cols.push_back("loglik_t");
  ResultTable& t = doc.table("filter", cols);
  for (Eigen::Index r = 0; r < filter.par_tv.rows(); ++r) {
    std::vector<std::string> row{std::to_string(r + 1)};
    for (Eigen::Index j = 0; j < filter.par_tv.cols(); ++j) row.push_back(format_real(filter.par_tv(r, j)));
    for (Eigen::Index j = 0; j < filter.score_tv.cols(); ++j) row.push_back(format_real(filter.score_tv(r, j)));
    row.push_back(format_real(filter.loglik_t[r]));
    t.rows.push_back(std::move(row));
  }
}

void add_forecast(ResultDocument& doc, const ModelSpec& spec, const ForecastResult& fc, std::size_t t_in_sample) {
  ResultSection& s = doc.section("forecast");
  s.set("method", std::string(to_string(fc.method)));
  s.set("horizon", fc.horizon);
  const bool sim = fc.method == ForecastMethod::simulated_paths;
  if (sim) s.set("paths", static_cast<long>(fc.y_paths.rows()));

  std::vector<std::string> cols{"t", "y_mean"};
  if (sim) {
    cols.push_back("y_sd");
    for (double p : fc.probs) cols.push_back("y_" + prob_label(p));
  }
  for (const auto& l : tv_labels(spec)) cols.push_back("par_" + l);
  ResultTable& t = doc.table("forecast", cols);
  for (int h = 0; h < fc.horizon; ++h) {
    std::vector<std::string> row{std::to_string(t_in_sample + static_cast<std::size_t>(h) + 1), format_real(fc.y_mean[h])};
    if (sim) {
      row.push_back(format_real(fc.y_sd[h]));
      for (Eigen::Index q = 0; q < fc.y_quant.cols(); ++q) row.push_back(format_real(fc.y_quant(h, q)));
    }
    for (Eigen::Index j = 0; j < fc.par_tv_ahead.cols(); ++j) row.push_back(format_real(fc.par_tv_ahead(h, j)));
    t.rows.push_back(std::move(row));
  }
}

void add_simulation(ResultDocument& doc, const ModelSpec& spec, const SimulationResult& sim,
                    const std::vector<std::pair<std::string, std::vector<double>>>& extra) {
  const std::vector<std::string> labels = tv_labels(spec);
  std::vector<std::string> cols{"t", "y"};
  for (const auto& [name, values] : extra) cols.push_back(name);
  for (const auto& l : labels) cols.push_back("par_" + l);
  for (const auto& l : labels) cols.push_back("score_" + l);
  ResultTable& t = doc.table("simulation", cols);
  for (Eigen::Index r = 0; r < sim.y_sim.size(); ++r) {
    std::vector<std::string> row{std::to_string(r + 1), format_real(sim.y_sim[r])};
    for (const auto& [name, values] : extra) row.push_back(format_real(values.at(static_cast<std::size_t>(r))));
    for (Eigen::Index j = 0; j < sim.par_tv_sim.cols(); ++j) row.push_back(format_real(sim.par_tv_sim(r, j)));
    for (Eigen::Index j = 0; j < sim.score_sim.cols(); ++j) row.push_back(format_real(sim.score_sim(r, j)));
    t.rows.push_back(std::move(row));
  }
}

void add_bootstrap(ResultDocument& doc, const std::vector<std::string>& names, const BootstrapResult& boot,
                   bool with_samples) {
  ResultSection& s = doc.section("bootstrap");
  s.set("method", std::string(to_string(boot.method)));
  s.set("replicates", static_cast<long>(boot.coef_samples.rows()));
  s.set("failures", boot.failures);
  std::vector<std::string> cols{"name", "mean", "sd"};
  for (double p : boot.probs) cols.push_back(prob_label(p));
  ResultTable& t = doc.table("bootstrap", cols);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    std::vector<std::string> row{names[i], format_real(boot.coef_mean[e]), format_real(boot.coef_sd[e])};
    for (Eigen::Index q = 0; q < boot.coef_quant.cols(); ++q) row.push_back(format_real(boot.coef_quant(e, q)));
    t.rows.push_back(std::move(row));
  }
  if (!with_samples) return;
  ResultTable& samples = doc.table("coef_samples", names);
  for (Eigen::Index r = 0; r < boot.coef_samples.rows(); ++r) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < boot.coef_samples.cols(); ++j) row.push_back(format_real(boot.coef_samples(r, j)));
    samples.rows.push_back(std::move(row));
  }
}

void add_filter_uncertainty(ResultDocument& doc, const ModelSpec& spec, const FilterUncertainty& fu) {
  ResultSection& s = doc.section("filter_uncertainty");
  s.set("method", std::string(to_string(fu.method)));
  s.set("sets", fu.sets);
  s.set("horizon", fu.horizon);
  const std::vector<std::string> labels = tv_labels(spec);
  std::vector<std::string> cols{"t"};
  for (const std::string kind : {"par", "score"}) {
    for (const auto& l : labels) {
      cols.push_back(kind + "_mean_" + l);
      cols.push_back(kind + "_sd_" + l);
      for (double p : fu.probs) cols.push_back(kind + "_" + prob_label(p) + "_" + l);
    }
  }
  ResultTable& t = doc.table("filter_uncertainty", cols);
  for (Eigen::Index r = 0; r < fu.par_tv_mean.rows(); ++r) {
    std::vector<std::string> row{std::to_string(r + 1)};
    auto push = [&](const Matrix& mean, const Matrix& sd, const std::vector<Matrix>& quant) {
      for (Eigen::Index j = 0; j < mean.cols(); ++j) {
        row.push_back(format_real(mean(r, j)));
        row.push_back(format_real(sd(r, j)));
        for (const Matrix& q : quant) row.push_back(format_real(q(r, j)));
      }
    };
    push(fu.par_tv_mean, fu.par_tv_sd, fu.par_tv_quant);
    push(fu.score_tv_mean, fu.score_tv_sd, fu.score_tv_quant);
    t.rows.push_back(std::move(row));
  }
}

std::string format_summary(const EstimationResult& est) {
  std::string out = "GAS Model: " + describe(est.spec) + "\n\nCoefficients:\n";
  std::size_t width = 0;
  for (const auto& n : est.names()) width = std::max(width, n.size());
  out += fmt::format("{:<{}}  {:>13}  {:>13}  {:>13}  {:>13}\n", "", width, "Estimate", "Std. Error", "Z-Test",
                     "Pr(>|Z|)");
  for (int i = 0; i < est.structure.size(); ++i) {
    out += fmt::format("{:<{}}  {:>13}  {:>13}  {:>13}  {:>13}\n", est.names()[static_cast<std::size_t>(i)], width,
                       summary_real(est.coef_est[i]), summary_real(est.coef_sd[i]), summary_real(est.z_stat[i]),
                       summary_real(est.p_value[i]));
  }
  out += fmt::format("\nLog-Likelihood: {}, AIC: {}, BIC: {}\n", summary_real(est.loglik), summary_real(est.aic),
                     summary_real(est.bic));
  return out;
}

}  // namespace gas::io
