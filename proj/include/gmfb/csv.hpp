#ifndef GMFB_CSV_HPP_
#define GMFB_CSV_HPP_

#include <string>
#include <vector>

namespace gmfb {

// A CSV file as raw strings: a header row naming the columns and one string
// per cell. Comma-separated, UTF-8, no quoting.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws ConfigError
};

CsvTable read_csv(const std::string& path);

// Parse a decimal floating-point cell; throws ConfigError naming the 1-based
// file line and column on bad input.
double parse_double_cell(const std::string& cell, std::size_t line,
                         const std::string& column);

}  // namespace gmfb

#endif  // GMFB_CSV_HPP_
