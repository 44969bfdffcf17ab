#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vigil/pipeline/clock.hpp"
#include "vigil/pipeline/profile.hpp"

namespace vigil::pipeline {

// What a stage sees of the frame. Synthetic stages ignore the pixels.
struct FrameView {
  std::uint64_t frame_id = 0;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::span<const std::uint8_t> pixels;
};

enum class StageStatus { Ok, Failed };

// One per-frame processing step. Real detectors implement run() and do their
// work on the calling thread; the pipeline timestamps around the call.
class Stage {
 public:
  virtual ~Stage() = default;
  virtual StageName name() const = 0;
  virtual StageStatus run(const FrameView& frame, Clock& clock) = 0;
};

// Spends a sampled service time on the clock. Sampling is deterministic for
// a given seed.
class SyntheticStage final : public Stage {
 public:
  SyntheticStage(StageProfile profile, std::uint64_t seed);

  StageName name() const override { return profile_.name; }
  StageStatus run(const FrameView& frame, Clock& clock) override;

  // Draws one service time in milliseconds (>= 0).
  double sample_ms();
  const StageProfile& profile() const noexcept { return profile_; }

  // Fail on this frame id instead of spending time (failure-path testing).
  void fail_on(std::uint64_t frame_id) { fail_frames_.push_back(frame_id); }

 private:
  StageProfile profile_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  std::lognormal_distribution<double> lognormal_;
  std::vector<std::uint64_t> fail_frames_;
};

struct TimingRecord {
  std::uint64_t frame_id = 0;
  std::uint64_t recv_ts_us = 0;
  std::optional<std::uint64_t> face_done_ts_us;
  std::optional<std::uint64_t> landmark_done_ts_us;
  std::optional<std::uint64_t> blink_done_ts_us;
  std::optional<StageName> failed_stage;

  bool complete() const noexcept { return blink_done_ts_us.has_value(); }
  bool operator==(const TimingRecord&) const = default;
};

// Holds exactly one stage per StageName.
class StageSet {
 public:
  StageSet() = default;
  StageSet(StageSet&&) noexcept = default;
  StageSet& operator=(StageSet&&) noexcept = default;

  // Replaces any stage already registered under the same name.
  void add(std::unique_ptr<Stage> stage);
  bool complete() const noexcept;
  Stage& at(StageName name);

  static StageSet synthetic(const PlatformProfile& profile, std::uint64_t seed);

 private:
  std::array<std::unique_ptr<Stage>, 3> stages_;
};

// Runs face -> landmark -> blink in order and timestamps after each stage.
// A failing stage leaves its own and all later timestamps unset.
// Throws std::logic_error if any stage is missing.
TimingRecord process_frame(const FrameView& frame, StageSet& stages, Clock& clock);

}  // namespace vigil::pipeline
