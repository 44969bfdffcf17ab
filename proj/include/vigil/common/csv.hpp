#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vigil::csv {

// Minimal reader for the flat, unquoted numeric CSV files this toolkit
// exchanges. The first line is the header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header; throws FormatError if absent.
  std::size_t column(std::string_view name) const;
};

Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line, char sep = ',');

double to_double(std::string_view cell);
long long to_int(std::string_view cell);
unsigned long long to_uint(std::string_view cell);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace vigil::csv
