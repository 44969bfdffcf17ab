#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vigil::report {

// "m ± s" with three decimals.
std::string format_mean_std(double mean, double std);
// Inverse of format_mean_std; throws std::invalid_argument.
std::pair<double, double> parse_mean_std(std::string_view cell);

std::string format_fixed(double value, int decimals = 3);

class ReportTable {
 public:
  ReportTable(std::string title, std::vector<std::string> headers);

  // Throws std::invalid_argument if the row arity differs from the header.
  void add_row(std::vector<std::string> cells);

  const std::string& title() const noexcept { return title_; }
  const std::vector<std::string>& headers() const noexcept { return headers_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  // Fixed-width text, columns padded to their widest cell.
  std::string render() const;
  // {"title":..,"headers":[..],"rows":[[..],..]}
  std::string to_json() const;

 private:
  std::string title_;
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace vigil::report
