#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sihd {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Ordered key=value metadata emitted as '#'-prefixed header lines.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  const std::string* find(const std::string& key) const;
};

/// Column-major numeric table, the payload of one run.
struct DataTable {
  struct Column {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Column> columns;

  Column& add_column(const std::string& name);
  const Column* find(const std::string& name) const;
  std::size_t rows() const;
};

/// Mean absolute estimation errors over the steady-state window.
struct ErrorSummary {
  double mean_abs_e1 = 0.0;
  double mean_abs_e2 = 0.0;
  double mean_abs_e3 = 0.0;
  double t_skip = 0.0;
  double t_end = 0.0;
};

/// CSV: '#key=value' metadata lines, then an RFC-4180 body with
/// round-trip precision (17 significant digits, '.' decimal separator).
void write_csv(std::ostream& os, const Metadata& meta, const DataTable& table);
void write_csv_file(const std::string& path, const Metadata& meta,
                    const DataTable& table);

/// One number at round-trip precision, as the CSV writer prints it.
std::string format_value(double v);

}  // namespace sihd
