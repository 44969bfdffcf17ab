#include "vigil/report/table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vigil/common/csv.hpp"

namespace vigil::report {

namespace {

constexpr std::string_view kPlusMinus = " ± ";

// Display width: count UTF-8 code points, not bytes.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string format_mean_std(double mean, double std) {
  return format_fixed(mean) + std::string(kPlusMinus) + format_fixed(std);
}

std::pair<double, double> parse_mean_std(std::string_view cell) {
  const auto pos = cell.find(kPlusMinus);
  if (pos == std::string_view::npos) throw std::invalid_argument("not a mean ± std cell: " + std::string(cell));
  try {
    return {csv::to_double(cell.substr(0, pos)), csv::to_double(cell.substr(pos + kPlusMinus.size()))};
  } catch (const std::exception&) {
    throw std::invalid_argument("not a mean ± std cell: " + std::string(cell));
  }
}

ReportTable::ReportTable(std::string title, std::vector<std::string> headers)
    : title_(std::move(title)), headers_(std::move(headers)) {}

void ReportTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != headers_.size()) {
    throw std::invalid_argument("report row has " + std::to_string(cells.size()) + " cells, header has " +
                                std::to_string(headers_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string ReportTable::render() const {
  std::vector<std::size_t> widths(headers_.size());
  for (std::size_t c = 0; c < headers_.size(); ++c) {
    widths[c] = display_width(headers_[c]);
    for (const auto& row : rows_) widths[c] = std::max(widths[c], display_width(row[c]));
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(widths[c] - display_width(cells[c]), ' ');
    }
    os << '\n';
  };
  os << title_ << '\n';
  emit(headers_);
  std::size_t rule = 0;
  for (auto w : widths) rule += w;
  rule += 2 * (widths.empty() ? 0 : widths.size() - 1);
  os << std::string(rule, '-') << '\n';
  for (const auto& row : rows_) emit(row);
  return os.str();
}

std::string ReportTable::to_json() const {
  const nlohmann::json j = {{"title", title_}, {"headers", headers_}, {"rows", rows_}};
  return j.dump(2);
}

}  // namespace vigil::report
