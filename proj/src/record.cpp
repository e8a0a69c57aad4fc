#include "sihd/record.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace sihd {

void Metadata::add(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}

void Metadata::add(const std::string& key, double value) {
  entries.emplace_back(key, format_value(value));
}

void Metadata::add(const std::string& key, long long value) {
  entries.emplace_back(key, std::to_string(value));
}

const std::string* Metadata::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

DataTable::Column& DataTable::add_column(const std::string& name) {
  columns.push_back({name, {}});
  return columns.back();
}

const DataTable::Column* DataTable::find(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::size_t DataTable::rows() const {
  return columns.empty() ? 0 : columns.front().values.size();
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Metadata& meta, const DataTable& table) {
  for (const auto& [k, v] : meta.entries) {
    os << '#' << k << '=' << v << '\n';
  }
  const std::size_t n = table.rows();
  for (const auto& c : table.columns) {
    if (c.values.size() != n) {
      throw std::logic_error("ragged table: column " + c.name);
    }
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i].name;
  }
  os << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) os << ',';
      os << format_value(table.columns[i].values[r]);
    }
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const Metadata& meta,
                    const DataTable& table) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  write_csv(f, meta, table);
}

}  // namespace sihd
