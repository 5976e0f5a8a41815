#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dilute::cli {

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Cell parse_cell(const std::string& s) {
  if (s.empty()) return s;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() + s.size()) return x;
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == column) return i;
  throw std::out_of_range("no column " + column);
}

double Table::number(std::size_t row, const std::string& column) const {
  return std::get<double>(rows.at(row).at(index(column)));
}

const std::string& Table::text(std::size_t row, const std::string& column) const {
  return std::get<std::string>(rows.at(row).at(index(column)));
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      if (const double* x = std::get_if<double>(&row[i]))
        out << format_number(*x);
      else
        out << std::get<std::string>(row[i]);
    }
    out << "\n";
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      if (const double* x = std::get_if<double>(&row[c]))
        col.push_back(*x);
      else
        col.push_back(std::get<std::string>(row[c]));
    }
    j[t.columns[c]] = std::move(col);
  }
  out << j.dump(2) << "\n";
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (const auto& s : split(line)) row.push_back(parse_cell(s));
    t.add_row(std::move(row));
  }
  return t;
}

Table read_json(std::istream& in) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  Table t;
  std::size_t n = 0;
  for (const auto& [key, col] : j.items()) {
    t.columns.push_back(key);
    n = col.size();
  }
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Cell> row;
    for (const auto& [key, col] : j.items()) {
      const auto& v = col.at(r);
      if (v.is_number())
        row.push_back(v.get<double>());
      else if (v.is_null())
        row.push_back(std::nan(""));
      else
        row.push_back(v.get<std::string>());
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace dilute::cli
