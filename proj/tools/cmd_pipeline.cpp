#include <json.hpp>

#include <iostream>
#include <sstream>

#include "cli_common.hpp"
#include "vigil/pipeline/profile.hpp"
#include "vigil/pipeline/simulator.hpp"
#include "vigil/pipeline/timing.hpp"

namespace vigil::cli {

void add_pipeline_bench(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("pipeline-bench", "Simulate the per-frame stages against a device profile");
  struct Opts {
    std::string profile;
    double fps = 30.0;
    std::uint64_t frames = 450;
    CommonOptions common{7, {}, false};
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--profile", o->profile, "device profile JSON")->required();
  cmd->add_option("--fps", o->fps, "frame arrival rate")->check(CLI::PositiveNumber);
  cmd->add_option("--frames", o->frames, "frames per resolution")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o->common.seed, "RNG seed");
  cmd->add_option("--out", o->common.out, "stage durations CSV (suffixed per resolution)");
  cmd->add_flag("--json", o->common.json, "print the table as JSON");
  cmd->callback([&run, o] {
    run = [o] {
      const auto set = pipeline::load_profiles(o->profile);
      const double duration = static_cast<double>(o->frames) / o->fps;
      report::ReportTable table("Inference time per stage (ms), " + (set.device.empty() ? o->profile : set.device),
                                {"Resolution", "Face", "Landmark", "Blink", "Total", "Max queue", "Verdict"});
      std::ostringstream verdicts;
      auto verdict_json = nlohmann::json::array();
      for (const auto& row : set.rows) {
        const auto trace = pipeline::simulate_session(o->fps, duration, row, o->common.seed);
        const auto s = pipeline::summarize_timings(trace.records);
        const auto v = pipeline::queue_stability(row, o->fps);
        table.add_row({row.label, report::format_mean_std(s.face.mean, s.face.std),
                       report::format_mean_std(s.landmark.mean, s.landmark.std),
                       report::format_mean_std(s.blink.mean, s.blink.std),
                       report::format_mean_std(s.total.mean, s.total.std), std::to_string(trace.max_queue_length()),
                       v.stable ? "stable" : "unstable"});
        verdicts << row.label << ": " << (v.stable ? "stable" : "unstable") << ", mean total "
                 << report::format_fixed(row.total_mean_ms()) << " ms vs budget " << report::format_fixed(v.frame_budget_ms)
                 << " ms";
        if (!v.stable) {
          verdicts << ", backlog grows " << report::format_fixed(v.backlog_growth_rate, 2) << " frames/s ("
                   << trace.final_queue_length << " queued after " << report::format_fixed(duration, 1) << " s)";
        }
        verdicts << '\n';
        verdict_json.push_back({{"resolution", row.label},
                                {"stable", v.stable},
                                {"mean_total_ms", row.total_mean_ms()},
                                {"frame_budget_ms", v.frame_budget_ms},
                                {"backlog_growth_rate", v.backlog_growth_rate},
                                {"final_queue_length", trace.final_queue_length}});
        if (!o->common.out.empty()) {
          const auto path = set.rows.size() == 1 ? o->common.out : with_suffix(o->common.out, row.label);
          write_output(path, pipeline::durations_to_csv(trace.records));
        }
      }
      if (set.rows.size() > 1) {
        const auto avg = pipeline::average_profile(set);
        const auto v = pipeline::queue_stability(avg, o->fps);
        verdicts << "all resolutions: " << (v.stable ? "stable" : "unstable") << ", average total "
                 << report::format_fixed(avg.total_mean_ms()) << " ms";
        if (!v.stable) verdicts << ", backlog grows " << report::format_fixed(v.backlog_growth_rate, 2) << " frames/s";
        verdicts << '\n';
        verdict_json.push_back({{"resolution", avg.label},
                                {"stable", v.stable},
                                {"mean_total_ms", avg.total_mean_ms()},
                                {"frame_budget_ms", v.frame_budget_ms},
                                {"backlog_growth_rate", v.backlog_growth_rate}});
      }
      if (o->common.json) {
        auto j = nlohmann::json::parse(table.to_json());
        j["verdicts"] = verdict_json;
        std::cout << j.dump(2) << std::endl;
      } else {
        print_table(table, false);
        std::cout << '\n' << verdicts.str() << std::flush;
      }
      return kOk;
    };
  });
}

}  // namespace vigil::cli
