#include "vigil/pipeline/stage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vigil::pipeline {

namespace {

std::lognormal_distribution<double> matched_lognormal(double mean, double stddev) {
  const double sigma2 = std::log1p((stddev * stddev) / (mean * mean));
  return std::lognormal_distribution<double>(std::log(mean) - 0.5 * sigma2, std::sqrt(sigma2));
}

}  // namespace

SyntheticStage::SyntheticStage(StageProfile profile, std::uint64_t seed)
    : profile_(profile),
      rng_(seed),
      normal_(profile.mean_ms, profile.std_ms),
      lognormal_(matched_lognormal(profile.mean_ms, profile.std_ms)) {}

double SyntheticStage::sample_ms() {
  switch (profile_.distribution) {
    case Distribution::Deterministic: return profile_.mean_ms;
    case Distribution::TruncatedNormal:
      if (profile_.std_ms == 0.0) return profile_.mean_ms;
      return std::max(0.0, normal_(rng_));
    case Distribution::LogNormal:
      if (profile_.std_ms == 0.0) return profile_.mean_ms;
      return lognormal_(rng_);
  }
  return profile_.mean_ms;
}

StageStatus SyntheticStage::run(const FrameView& frame, Clock& clock) {
  if (std::find(fail_frames_.begin(), fail_frames_.end(), frame.frame_id) != fail_frames_.end()) {
    return StageStatus::Failed;
  }
  clock.advance_us(static_cast<std::uint64_t>(std::llround(sample_ms() * 1000.0)));
  return StageStatus::Ok;
}

void StageSet::add(std::unique_ptr<Stage> stage) {
  if (!stage) throw std::invalid_argument("null stage");
  stages_[static_cast<std::size_t>(stage->name())] = std::move(stage);
}

bool StageSet::complete() const noexcept {
  return std::all_of(stages_.begin(), stages_.end(), [](const auto& s) { return s != nullptr; });
}

Stage& StageSet::at(StageName name) {
  auto& s = stages_[static_cast<std::size_t>(name)];
  if (!s) throw std::logic_error("no stage registered for " + std::string(to_string(name)));
  return *s;
}

StageSet StageSet::synthetic(const PlatformProfile& profile, std::uint64_t seed) {
  validate(profile);
  StageSet set;
  // Independent streams per stage so adding a stage never shifts the others.
  std::seed_seq seq{seed};
  std::array<std::uint64_t, 3> seeds{};
  std::array<std::uint32_t, 6> raw{};
  seq.generate(raw.begin(), raw.end());
  for (std::size_t i = 0; i < 3; ++i) seeds[i] = (std::uint64_t{raw[2 * i]} << 32) | raw[2 * i + 1];
  for (std::size_t i = 0; i < 3; ++i) set.add(std::make_unique<SyntheticStage>(profile.stages[i], seeds[i]));
  return set;
}

TimingRecord process_frame(const FrameView& frame, StageSet& stages, Clock& clock) {
  if (!stages.complete()) throw std::logic_error("process_frame requires face, landmark and blink stages");
  TimingRecord rec;
  rec.frame_id = frame.frame_id;
  rec.recv_ts_us = clock.now_us();
  std::array<std::optional<std::uint64_t>*, 3> slots{&rec.face_done_ts_us, &rec.landmark_done_ts_us,
                                                     &rec.blink_done_ts_us};
  for (std::size_t i = 0; i < kStageOrder.size(); ++i) {
    if (stages.at(kStageOrder[i]).run(frame, clock) == StageStatus::Failed) {
      rec.failed_stage = kStageOrder[i];
      return rec;
    }
    *slots[i] = clock.now_us();
  }
  return rec;
}

}  // namespace vigil::pipeline
