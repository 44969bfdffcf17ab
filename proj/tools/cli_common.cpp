#include "cli_common.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"

namespace vigil::cli {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, std::string_view contents) {
  if (path.empty() || path == "-") {
    std::cout << contents << std::flush;
    return;
  }
  csv::write_file(path, contents);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  auto name = p.stem().string() + "-" + suffix + p.extension().string();
  return (p.parent_path() / name).string();
}

std::pair<std::uint16_t, std::uint16_t> parse_resolution(std::string_view text) {
  const auto x = text.find('x');
  auto number = [&](std::string_view part) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty() || value == 0 || value > 65535) {
      throw UsageError("bad resolution '" + std::string(text) + "', expected WxH");
    }
    return static_cast<std::uint16_t>(value);
  };
  if (x == std::string_view::npos) throw UsageError("bad resolution '" + std::string(text) + "', expected WxH");
  return {number(text.substr(0, x)), number(text.substr(x + 1))};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto& item : csv::split(text, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_table(const report::ReportTable& table, bool json) {
  std::cout << (json ? table.to_json() + "\n" : table.render()) << std::flush;
}

}  // namespace vigil::cli
