#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vigil/report/table.hpp"

namespace vigil::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2, kDegenerate = 3 };

// Bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string out;
  bool json = false;
};

std::string read_text(const std::filesystem::path& path);

// Writes to `path`, or to stdout when `path` is empty or "-".
void write_output(const std::string& path, std::string_view contents);

// "report.csv" + "640x480" -> "report-640x480.csv"
std::string with_suffix(const std::string& path, const std::string& suffix);

// "1280x720" -> {1280, 720}; throws UsageError.
std::pair<std::uint16_t, std::uint16_t> parse_resolution(std::string_view text);

std::vector<std::string> split_list(std::string_view text);

void print_table(const report::ReportTable& table, bool json);

// Each registers one subcommand; its callback stores the handler in `run`.
using Runner = std::function<int()>;
void add_echo_server(CLI::App& app, Runner& run);
void add_stream_bench(CLI::App& app, Runner& run);
void add_pipeline_bench(CLI::App& app, Runner& run);
void add_detect(CLI::App& app, Runner& run);
void add_optimize(CLI::App& app, Runner& run);
void add_vote(CLI::App& app, Runner& run);
void add_gen(CLI::App& app, Runner& run);
void add_report(CLI::App& app, Runner& run);

}  // namespace vigil::cli
