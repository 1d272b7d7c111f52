#pragma once

#include <istream>
#include <string>
#include <vector>

namespace urnnet {

// Shortest-roundtrip-safe fixed formatting used by every text output, so
// that identical runs give byte-identical files.
std::string format_real(double x);

// Minimal comma-separated table: header row plus string cells. No quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; throws InvalidInput if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace urnnet
