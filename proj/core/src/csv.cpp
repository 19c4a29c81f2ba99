#include "cofermion/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cofermion::csv {

std::string format_sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return buf;
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

static std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split_line(line));
    if (t.rows.back().size() != t.header.size())
      throw std::runtime_error("csv: ragged row");
  }
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("csv: cannot open " + path);
  return read_csv(f);
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

double to_double(const std::string& cell) {
  size_t pos = 0;
  double v = std::stod(cell, &pos);
  if (pos != cell.size()) throw std::runtime_error("csv: bad number '" + cell + "'");
  return v;
}

long to_long(const std::string& cell) {
  size_t pos = 0;
  long v = std::stol(cell, &pos);
  if (pos != cell.size()) throw std::runtime_error("csv: bad integer '" + cell + "'");
  return v;
}

}  // namespace cofermion::csv
