#ifndef COFERMION_CSV_HPP
#define COFERMION_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cofermion::csv {

/// 12 significant digits, scientific notation, '.' decimal separator.
std::string format_sci(double x);

/// Full-precision (%.17g) formatting for round-trip-safe files.
std::string format_full(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

double to_double(const std::string& cell);
long to_long(const std::string& cell);

}  // namespace cofermion::csv

#endif
