#include "urnnet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "urnnet/errors.hpp"

namespace urnnet {

std::string format_real(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidInput("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const auto idx = column(name);
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (idx >= rows[r].size()) {
      throw InvalidInput("csv: row " + std::to_string(r + 2) + " is missing column '" + name + "'");
    }
    const auto& cell = rows[r][idx];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw InvalidInput("csv: row " + std::to_string(r + 2) + " column '" + name +
                         "' is not a number: '" + cell + "'");
    }
    values.push_back(v);
  }
  return values;
}

CsvTable read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    return cells;
  };

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("csv: empty input");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    table.rows.push_back(split(line));
  }
  return table;
}

}  // namespace urnnet
