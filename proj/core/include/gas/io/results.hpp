// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gas/estimation.hpp"
#include "gas/forecast.hpp"
#include "gas/uncertainty.hpp"

namespace gas::io {

// Machine-readable result file: `[name]` sections of `key = value` lines and
// `[[name]]` sections holding a CSV table. Reals are written with 17
// significant digits so reading them back reproduces the same doubles.
struct ResultSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long value);
  void set(const std::string& key, int value) { set(key, static_cast<long>(value)); }
  void set(const std::string& key, bool value);
  const std::string* find(const std::string& key) const;
  // Throws DataError when absent or not a number.
  double real(const std::string& key) const;
};

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& column) const;
  std::vector<double> numeric(const std::string& column) const;
  std::vector<std::string> text(const std::string& column) const;
};

class ResultDocument {
 public:
  ResultSection& section(const std::string& name);
  ResultTable& table(const std::string& name, std::vector<std::string> columns);
  const ResultSection* find_section(const std::string& name) const;
  const ResultTable* table(const std::string& name) const;

  void write(std::ostream& out) const;
  std::string str() const;

  // Parses text written by write(). Throws DataError with a line number on malformed input.
  static ResultDocument parse(std::istream& in, const std::string& source = "<input>");

 private:
  struct Entry {
    bool is_table;
    std::size_t index;
  };
  std::vector<ResultSection> sections_;
  std::vector<ResultTable> tables_;
  std::vector<Entry> order_;
};

std::string format_real(double v);

// Throws DataError with path context on I/O failure.
void write_results(const ResultDocument& doc, const std::string& path);
ResultDocument read_results(const std::string& path);

// Column labels of the time-varying parameters in link space, e.g. "log(mean)".
std::vector<std::string> tv_labels(const ModelSpec& spec);

void add_model(ResultDocument& doc, const ModelSpec& spec);
void add_estimation(ResultDocument& doc, const EstimationResult& est, bool with_vcov);
void add_filter(ResultDocument& doc, const ModelSpec& spec, const FilterOutput& filter);
void add_forecast(ResultDocument& doc, const ModelSpec& spec, const ForecastResult& fc, std::size_t t_in_sample);
// `extra` columns (regressors) are appended so the table can be estimated directly.
void add_simulation(ResultDocument& doc, const ModelSpec& spec, const SimulationResult& sim,
                    const std::vector<std::pair<std::string, std::vector<double>>>& extra = {});
void add_bootstrap(ResultDocument& doc, const std::vector<std::string>& names, const BootstrapResult& boot,
                   bool with_samples);
void add_filter_uncertainty(ResultDocument& doc, const ModelSpec& spec, const FilterUncertainty& fu);

// Human-readable coefficient table with a log-likelihood/AIC/BIC trailer.
std::string format_summary(const EstimationResult& est);

}  // namespace gas::io
