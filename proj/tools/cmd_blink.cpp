#include <iostream>

#include "cli_common.hpp"
#include "vigil/blink/detector.hpp"
#include "vigil/blink/ear.hpp"
#include "vigil/blink/features.hpp"

namespace vigil::cli {

void add_detect(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("detect", "Detect blinks in an EAR series and extract their features");
  struct Opts {
    std::string in;
    double fps = 30.0;
    double threshold = 0.2;
    std::size_t min_closed = 2;
    CommonOptions common;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "EAR CSV (frame_id,ts_us,ear)")->required();
  cmd->add_option("--fps", o->fps, "frame rate of the series")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", o->threshold, "EAR below which the eye counts as closed")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--min-closed", o->min_closed, "shortest closed run, in frames")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o->common.out, "features CSV");
  cmd->add_flag("--json", o->common.json, "print the table as JSON");
  cmd->callback([&run, o] {
    run = [o] {
      const auto series = blink::ear_series_from_csv(read_text(o->in));
      blink::DetectorConfig cfg;
      cfg.close_threshold = o->threshold;
      cfg.min_closed_frames = o->min_closed;
      const auto blinks = blink::detect_blinks(series, cfg);
      const auto features = blink::extract_all(blinks, series, o->fps);

      report::ReportTable table("Blinks: " + std::to_string(blinks.size()),
                                {"#", "Start", "Apex", "End", "Min EAR", "Amplitude", "Velocity/s", "Duration s",
                                 "Per min"});
      for (std::size_t i = 0; i < blinks.size(); ++i) {
        const auto& b = blinks[i];
        const auto& f = features[i];
        table.add_row({std::to_string(i), std::to_string(b.start_frame), std::to_string(b.apex_frame),
                       std::to_string(b.end_frame), report::format_fixed(b.min_ear), report::format_fixed(f.amplitude),
                       report::format_fixed(f.velocity), report::format_fixed(f.duration),
                       report::format_fixed(f.frequency, 0)});
      }
      if (!o->common.out.empty()) write_output(o->common.out, blink::features_to_csv(features));
      print_table(table, o->common.json);
      return kOk;
    };
  });
}

}  // namespace vigil::cli
