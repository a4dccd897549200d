// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <istream>
#include <string>
#include <vector>

namespace gas::io {

// Rectangular text table read from CSV. Cells stay as text until a column is
// requested as numbers, so label columns (dates) may hold anything.
class DataTable {
 public:
  DataTable() = default;
  DataTable(std::string source, std::vector<std::string> names, std::vector<std::vector<std::string>> rows);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t rows() const { return rows_.size(); }
  const std::string& source() const { return source_; }
  bool has(const std::string& name) const { return index_of(name) >= 0; }
  int index_of(const std::string& name) const;

  // Empty cells and NA are missing (NaN). Throws DataError naming the cell
  // when a value is not a number or the column does not exist.
  std::vector<double> numeric(const std::string& name) const;
  const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }

 private:
  std::string source_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> rows_;
};

DataTable parse_csv(std::istream& in, const std::string& source = "<input>");

// Reads a CSV file, or the simulation table of a result file written by this
// library so simulated series can be fed back in.
DataTable parse_data(const std::string& path);

// Decimal real, or NaN for "" and "NA". Returns false on anything else.
bool parse_cell(const std::string& text, double& value);

}  // namespace gas::io
