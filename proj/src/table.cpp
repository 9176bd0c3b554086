#include "dipsim/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dipsim/errors.hpp"

namespace dipsim {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw DimensionMismatch("ResultTable: row length != column count");
  rows.push_back(std::move(row));
}

void ResultTable::check() const {
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw DimensionMismatch("ResultTable: ragged rows");
    for (size_t c = 0; c < row.size(); ++c)
      if (!std::isfinite(row[c]) && !columns[c].may_diverge)
        throw SimError("ResultTable: non-finite value in column " +
                       columns[c].name);
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ResultTable::to_csv() const {
  check();
  std::string out;
  for (size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SimError("cannot open " + path + " for writing");
  f << data;
}

}  // namespace dipsim
