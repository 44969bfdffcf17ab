#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vigil/blink/ear.hpp"

namespace vigil::blink {

struct Blink {
  std::uint64_t start_frame = 0;
  std::uint64_t apex_frame = 0;  // minimum EAR, earliest on ties
  std::uint64_t end_frame = 0;
  double min_ear = 0.0;
  double baseline_ear = 0.0;  // open-eye level just before the blink

  bool operator==(const Blink&) const = default;
};

struct DetectorConfig {
  double close_threshold = 0.2;
  std::size_t min_closed_frames = 2;
  std::size_t baseline_window = 10;
};

// Finds maximal runs of at least `min_closed_frames` samples with EAR below
// `close_threshold`. Each blink is widened by one sample on both sides (the
// nearest samples at/above threshold, when present). The baseline EAR is the
// median of up to `baseline_window` samples preceding the start.
//
// Throws std::invalid_argument on an empty or unsorted series or
// non-positive thresholds.
std::vector<Blink> detect_blinks(std::span<const EarSample> series, const DetectorConfig& cfg = {});

// Position of `frame_id` in a sorted series; throws std::out_of_range.
std::size_t index_of(std::span<const EarSample> series, std::uint64_t frame_id);

}  // namespace vigil::blink
