#pragma once

#include <span>
#include <string>
#include <vector>

#include "vigil/common/stats.hpp"
#include "vigil/pipeline/stage.hpp"

namespace vigil::pipeline {

// Per-stage durations of one complete record, in milliseconds.
struct StageDurations {
  std::uint64_t frame_id = 0;
  double face_ms = 0.0;
  double landmark_ms = 0.0;
  double blink_ms = 0.0;
  double total_ms = 0.0;
};

struct TimingSummary {
  SummaryStats face;
  SummaryStats landmark;
  SummaryStats blink;
  SummaryStats total;
};

// Throws std::invalid_argument if `rec` is incomplete.
StageDurations durations(const TimingRecord& rec);

// Statistics over the complete records; failed records are skipped.
// Throws std::invalid_argument if there is no complete record.
TimingSummary summarize_timings(std::span<const TimingRecord> records);

// `frame_id,face_ms,landmark_ms,blink_ms,total_ms` over complete records.
std::string durations_to_csv(std::span<const TimingRecord> records);
std::vector<StageDurations> durations_from_csv(const std::string& text);
TimingSummary summarize_durations(std::span<const StageDurations> rows);

}  // namespace vigil::pipeline
