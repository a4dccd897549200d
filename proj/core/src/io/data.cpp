// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/io/data.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "gas/errors.hpp"
#include "gas/io/results.hpp"
#include "gas/types.hpp"

namespace gas::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataError(where + ": unterminated quoted field");
  out.push_back(trim(cur));
  return out;
}

}  // namespace

bool parse_cell(const std::string& text, double& value) {
  if (text.empty() || text == "NA") {
    value = kNaN;
    return true;
  }
  if (text == "Inf" || text == "inf") {
    value = kInf;
    return true;
  }
  if (text == "-Inf" || text == "-inf") {
    value = -kInf;
    return true;
  }
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

DataTable::DataTable(std::string source, std::vector<std::string> names, std::vector<std::vector<std::string>> rows)
    : source_(std::move(source)), names_(std::move(names)), rows_(std::move(rows)) {}

int DataTable::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> DataTable::numeric(const std::string& name) const {
  const int col = index_of(name);
  if (col < 0) throw DataError(source_ + ": column '" + name + "' not found");
  std::vector<double> out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!parse_cell(rows_[r][static_cast<std::size_t>(col)], out[r])) {
      throw DataError(source_ + ": row " + std::to_string(r + 1) + ", column '" + name + "': '" +
                      rows_[r][static_cast<std::size_t>(col)] + "' is not a number");
    }
  }
  return out;
}

DataTable parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": missing header row");
  const std::vector<std::string> names = split_csv_line(line, source + ": header");
  std::set<std::string> seen;
  for (const std::string& n : names) {
    if (n.empty()) throw DataError(source + ": empty column name in header");
    if (!seen.insert(n).second) throw DataError(source + ": duplicate column '" + n + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    const std::string where = source + ": row " + std::to_string(rows.size() + 1);
    std::vector<std::string> cells = split_csv_line(line, where);
    if (cells.size() != names.size()) {
      throw DataError(where + ": expected " + std::to_string(names.size()) + " fields, found " +
                      std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  return DataTable(source, names, std::move(rows));
}

DataTable parse_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  std::string first;
  while (std::getline(in, first) && trim(first).empty()) {
  }
  if (!trim(first).empty() && trim(first).front() == '[') {
    const ResultDocument doc = read_results(path);
    const ResultTable* sim = doc.table("simulation");
    if (!sim) throw DataError(path + ": result file has no simulation table");
    return DataTable(path, sim->columns, sim->rows);
  }
  in.clear();
  in.seekg(0);
  return parse_csv(in, path);
}

}  // namespace gas::io
