#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vigil/blink/detector.hpp"

namespace vigil::blink {

struct BlinkFeatures {
  double amplitude = 0.0;  // EAR units
  double velocity = 0.0;   // EAR units per second, peak closing speed
  double duration = 0.0;   // seconds
  double frequency = 0.0;  // blinks per minute

  std::array<double, 4> as_array() const { return {amplitude, velocity, duration, frequency}; }
  static BlinkFeatures from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }
  bool operator==(const BlinkFeatures&) const = default;
};

// amplitude = baseline - min EAR
// duration  = (end - start + 1) / fps
// velocity  = largest single-frame EAR drop between start and apex, times fps
// frequency = blinks whose apex lies in the trailing 60 s, this one included
//
// `earlier_apex_ts_us` holds apex timestamps of previously detected blinks;
// entries at or after this blink's apex are ignored.
// Throws std::invalid_argument for fps <= 0 or a blink that does not fit the series.
BlinkFeatures extract_features(const Blink& blink, std::span<const EarSample> series, double fps,
                               std::span<const std::uint64_t> earlier_apex_ts_us = {});

// Features for every blink in chronological order, feeding each one the
// apex times of the blinks before it.
std::vector<BlinkFeatures> extract_all(std::span<const Blink> blinks, std::span<const EarSample> series, double fps);

struct BaselineStats {
  BlinkFeatures mean;
  BlinkFeatures std;  // population
  std::size_t source_count = 0;
};

// Per-feature mean/std over the first ceil(n/3) alert blinks.
// Throws DegenerateDataError on empty input.
BaselineStats baseline_stats(std::span<const BlinkFeatures> alert_blinks);

struct NormalizedFeatures {
  BlinkFeatures z;
  // Set for features whose baseline std is zero; their z value is 0.
  std::array<bool, 4> degenerate{};

  bool any_degenerate() const;
};

// z-score against the baseline.
NormalizedFeatures normalize_features(const BlinkFeatures& features, const BaselineStats& baseline);
BlinkFeatures denormalize_features(const BlinkFeatures& z, const BaselineStats& baseline);

// `blink_id,amplitude,velocity,duration_s,freq_per_min`
std::string features_to_csv(std::span<const BlinkFeatures> features);
std::vector<BlinkFeatures> features_from_csv(const std::string& text);

}  // namespace vigil::blink
