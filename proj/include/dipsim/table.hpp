#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace dipsim {

/// Column-oriented numeric result with units metadata and provenance,
/// written as CSV plus a JSON sidecar.
struct ResultTable {
  struct Column {
    std::string name;
    std::string unit;        // empty = dimensionless
    bool may_diverge = false;  // large values near poles are expected
  };

  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  /// Throws if any non-flagged column holds NaN/Inf or a row length differs.
  void check() const;
  /// CSV: UTF-8, '.' decimal, 17 significant digits, header row.
  std::string to_csv() const;
};

std::string format_double(double v);

/// FNV-1a over a canonical string; used to fingerprint configs.
std::uint64_t fnv1a(const std::string& data);

void write_file(const std::string& path, const std::string& data);

}  // namespace dipsim
