#include "vigil/synth/ear_series.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace vigil::synth {

namespace {

void check_script(const BlinkScript& script) {
  if (!(script.fps > 0.0)) throw std::invalid_argument("blink script: fps must be positive");
  if (script.noise_std < 0.0) throw std::invalid_argument("blink script: noise_std must be >= 0");
  for (std::size_t i = 0; i < script.blinks.size(); ++i) {
    const auto& b = script.blinks[i];
    const std::string tag = "blink " + std::to_string(i) + ": ";
    if (b.onset_frame == 0) throw std::invalid_argument(tag + "needs an open frame before onset");
    if (b.descent_frames == 0 || b.closed_frames == 0) {
      throw std::invalid_argument(tag + "descent_frames and closed_frames must be >= 1");
    }
    if (!(b.trough_ear >= 0.0 && b.trough_ear < b.baseline_ear)) {
      throw std::invalid_argument(tag + "requires 0 <= trough < baseline");
    }
    if (b.recovery_frame() >= script.total_frames) throw std::invalid_argument(tag + "extends past total_frames");
    if (i > 0 && script.blinks[i - 1].recovery_frame() >= b.last_open_frame()) {
      throw std::invalid_argument(tag + "overlaps the previous blink");
    }
  }
}

}  // namespace

GeneratedSeries gen_ear_series(const BlinkScript& script) {
  check_script(script);

  std::vector<double> ear(script.total_frames, script.open_ear);
  if (!script.blinks.empty()) {
    // Open level: baseline of the next blink.
    std::size_t next = 0;
    for (std::uint64_t f = 0; f < script.total_frames; ++f) {
      while (next + 1 < script.blinks.size() && f > script.blinks[next].recovery_frame()) ++next;
      ear[f] = script.blinks[next].baseline_ear;
    }
  }

  GeneratedSeries out;
  for (const auto& b : script.blinks) {
    const double depth = b.baseline_ear - b.trough_ear;
    const std::uint32_t d = b.descent_frames;
    for (std::uint32_t j = 1; j < d; ++j) {
      ear[b.onset_frame + j - 1] = b.baseline_ear - depth * j / d;
      ear[b.apex_frame() + b.closed_frames + j - 1] = b.trough_ear + depth * j / d;
    }
    for (std::uint32_t j = 0; j < b.closed_frames; ++j) ear[b.apex_frame() + j] = b.trough_ear;
    out.truth.push_back(blink::Blink{b.last_open_frame(), b.apex_frame(), b.recovery_frame(), b.trough_ear,
                                     b.baseline_ear});
  }

  std::mt19937_64 rng(script.seed);
  std::normal_distribution<double> noise(0.0, script.noise_std > 0.0 ? script.noise_std : 1.0);
  out.samples.reserve(ear.size());
  for (std::uint64_t f = 0; f < script.total_frames; ++f) {
    double v = ear[f];
    if (script.noise_std > 0.0) v = std::max(0.0, v + noise(rng));
    const auto ts = static_cast<std::uint64_t>(std::llround(static_cast<double>(f) * 1e6 / script.fps));
    out.samples.push_back(blink::EarSample{f, ts, v});
  }
  return out;
}

BlinkScript random_script(const RandomScriptOptions& opts, std::uint64_t seed) {
  if (opts.min_gap_frames == 0 || opts.max_gap_frames < opts.min_gap_frames || opts.max_descent_frames == 0 ||
      opts.min_closed_frames == 0 || opts.max_closed_frames < opts.min_closed_frames) {
    throw std::invalid_argument("random_script: inconsistent options");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> baseline(0.28, 0.38);
  std::uniform_real_distribution<double> trough(0.03, 0.12);
  std::uniform_int_distribution<std::uint32_t> gap(opts.min_gap_frames, opts.max_gap_frames);
  std::uniform_int_distribution<std::uint32_t> descent(1, opts.max_descent_frames);
  std::uniform_int_distribution<std::uint32_t> closed(opts.min_closed_frames, opts.max_closed_frames);

  BlinkScript script;
  script.fps = opts.fps;
  script.noise_std = opts.noise_std;
  script.seed = seed;
  std::uint64_t cursor = 0;  // first frame not yet used
  for (std::size_t i = 0; i < opts.n_blinks; ++i) {
    ScriptedBlink b;
    b.baseline_ear = baseline(rng);
    b.trough_ear = trough(rng);
    b.descent_frames = descent(rng);
    b.closed_frames = closed(rng);
    b.onset_frame = cursor + gap(rng);
    cursor = b.recovery_frame() + 1;
    script.blinks.push_back(b);
  }
  script.total_frames = cursor + opts.min_gap_frames;
  return script;
}

}  // namespace vigil::synth
