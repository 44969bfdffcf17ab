#include <json.hpp>

#include <iostream>

#include "cli_common.hpp"
#include "vigil/common/errors.hpp"
#include "vigil/common/stats.hpp"
#include "vigil/pipeline/timing.hpp"
#include "vigil/transport/interval_stats.hpp"
#include "vigil/transport/stream_client.hpp"

namespace vigil::cli {

namespace {

report::ReportTable rtt_table(const std::vector<std::string>& files) {
  report::ReportTable table("Round trips (ms)", {"File", "Frames", "Interval", "Median", "RTT", "RTT median"});
  for (const auto& f : files) {
    const auto records = transport::round_trips_from_csv(read_text(f));
    const auto iv = transport::interval_stats(records);
    std::vector<double> rtt;
    for (const auto& r : records) rtt.push_back(static_cast<double>(r.rtt_us) / 1000.0);
    const auto rs = summarize(rtt);
    table.add_row({f, std::to_string(records.size()), report::format_mean_std(iv.mean_us / 1000.0, iv.std_us / 1000.0),
                   report::format_fixed(iv.median_us / 1000.0), report::format_mean_std(rs.mean, rs.std),
                   report::format_fixed(rs.median)});
  }
  return table;
}

report::ReportTable timing_table(const std::vector<std::string>& files) {
  report::ReportTable table("Stage durations (ms)", {"File", "Frames", "Face", "Landmark", "Blink", "Total"});
  for (const auto& f : files) {
    const auto rows = pipeline::durations_from_csv(read_text(f));
    if (rows.empty()) throw FormatError("'" + f + "' has no rows");
    const auto s = pipeline::summarize_durations(rows);
    table.add_row({f, std::to_string(rows.size()), report::format_mean_std(s.face.mean, s.face.std),
                   report::format_mean_std(s.landmark.mean, s.landmark.std),
                   report::format_mean_std(s.blink.mean, s.blink.std),
                   report::format_mean_std(s.total.mean, s.total.std)});
  }
  return table;
}

}  // namespace

void add_report(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("report", "Summarize round-trip or stage-duration CSV exports");
  struct Opts {
    std::vector<std::string> rtt;
    std::vector<std::string> timings;
    CommonOptions common;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--rtt", o->rtt, "round-trip CSV from stream-bench");
  cmd->add_option("--timings", o->timings, "stage durations CSV from pipeline-bench");
  cmd->add_flag("--json", o->common.json, "print the tables as JSON");
  cmd->callback([&run, o] {
    run = [o] {
      if (o->rtt.empty() && o->timings.empty()) throw UsageError("report needs --rtt and/or --timings");
      std::vector<report::ReportTable> tables;
      if (!o->rtt.empty()) tables.push_back(rtt_table(o->rtt));
      if (!o->timings.empty()) tables.push_back(timing_table(o->timings));
      if (o->common.json) {
        auto j = nlohmann::json::array();
        for (const auto& t : tables) j.push_back(nlohmann::json::parse(t.to_json()));
        std::cout << j.dump(2) << std::endl;
        return kOk;
      }
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) std::cout << '\n';
        print_table(tables[i], false);
      }
      return kOk;
    };
  });
}

}  // namespace vigil::cli
