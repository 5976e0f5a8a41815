#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dilute::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t index(const std::string& column) const;  // throws std::out_of_range
  double number(std::size_t row, const std::string& column) const;
  const std::string& text(std::size_t row, const std::string& column) const;
};

// numbers as %.17g, strings verbatim (no commas or quotes allowed)
void write_csv(const Table& t, std::ostream& out);
// {"column": [values...], ...} in column order
void write_json(const Table& t, std::ostream& out);

Table read_csv(std::istream& in);
Table read_json(std::istream& in);

}  // namespace dilute::cli
