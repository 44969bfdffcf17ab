#pragma once

#include <cstdint>
#include <vector>

#include "vigil/blink/detector.hpp"
#include "vigil/blink/ear.hpp"

namespace vigil::synth {

struct ScriptedBlink {
  std::uint64_t onset_frame = 0;  // first frame below the open-eye level
  std::uint32_t closed_frames = 1;
  double trough_ear = 0.1;
  double baseline_ear = 0.3;
  // Frames-per-step count of the linear ramp: EAR falls by
  // (baseline - trough) / descent_frames per frame, so there are
  // descent_frames - 1 intermediate frames before the plateau.
  std::uint32_t descent_frames = 1;

  // Derived geometry (frame ids).
  std::uint64_t apex_frame() const noexcept { return onset_frame + descent_frames - 1; }
  std::uint64_t last_open_frame() const noexcept { return onset_frame - 1; }
  std::uint64_t recovery_frame() const noexcept {
    return onset_frame + 2 * (descent_frames - 1) + closed_frames;
  }
};

struct BlinkScript {
  std::vector<ScriptedBlink> blinks;  // sorted, non-overlapping
  double fps = 30.0;
  std::uint64_t total_frames = 0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  // Open-eye level when the script has no blinks.
  double open_ear = 0.3;
};

struct GeneratedSeries {
  std::vector<blink::EarSample> samples;
  // One entry per scripted blink: start = last open frame before the
  // descent, apex = first plateau frame, end = first open frame after the
  // ascent, min_ear = trough, baseline_ear = baseline.
  std::vector<blink::Blink> truth;
};

// Open-eye level between blinks is the baseline of the next blink (the last
// blink's baseline after it). Gaussian noise of noise_std is added to every
// sample and the result clamped at 0. Throws std::invalid_argument on an
// invalid script (overlap, trough >= baseline, blinks outside the series).
GeneratedSeries gen_ear_series(const BlinkScript& script);

struct RandomScriptOptions {
  std::size_t n_blinks = 3;
  double fps = 30.0;
  double noise_std = 0.0;
  std::uint32_t min_gap_frames = 20;
  std::uint32_t max_gap_frames = 40;
  std::uint32_t max_descent_frames = 4;
  std::uint32_t min_closed_frames = 2;
  std::uint32_t max_closed_frames = 6;
};

// Random but seed-deterministic script: baselines in [0.28, 0.38], troughs
// in [0.03, 0.12], with at least min_gap_frames open frames before each blink.
BlinkScript random_script(const RandomScriptOptions& opts, std::uint64_t seed);

}  // namespace vigil::synth
