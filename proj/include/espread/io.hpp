#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace espread::io {

/// Column-oriented numeric table; the CSV exchange format of this project.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
};

/// Doubles are written with "%.17g" so payloads round-trip bit exactly and
/// re-running a configuration reproduces files byte for byte.
std::string format_double(double v);

void write_csv(const Table& table, const std::filesystem::path& path);
Table read_csv(const std::filesystem::path& path);

/// Ordered key = value pairs; '#' starts a comment, lists are comma separated.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues read_config_file(const std::filesystem::path& path);
void write_config_file(const KeyValues& values, const std::filesystem::path& path);

std::vector<double> parse_double_list(const std::string& text);
std::string join_double_list(const std::vector<double>& values);

void ensure_directory(const std::filesystem::path& dir);

}  // namespace espread::io
