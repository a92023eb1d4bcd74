#include "gmfb/csv.hpp"

#include <charconv>
#include <fstream>

#include "gmfb/errors.hpp"

namespace gmfb {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ConfigError("csv: missing column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (line_no == 1) {
      table.columns = std::move(cells);
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw ConfigError("csv: line " + std::to_string(line_no) + " of '" +
                        path + "' has " + std::to_string(cells.size()) +
                        " cells, expected " +
                        std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.columns.empty()) {
    throw ConfigError("csv: '" + path + "' has no header row");
  }
  return table;
}

double parse_double_cell(const std::string& cell, std::size_t line,
                         const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("csv: line " + std::to_string(line) +
                      ", column '" + column + "': cannot parse '" + cell +
                      "' as a number");
  }
  return value;
}

}  // namespace gmfb
