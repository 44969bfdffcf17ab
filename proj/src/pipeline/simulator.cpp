#include "vigil/pipeline/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace vigil::pipeline {

std::size_t SessionTrace::max_queue_length() const {
  if (queue_length_at_arrival.empty()) return 0;
  return *std::max_element(queue_length_at_arrival.begin(), queue_length_at_arrival.end());
}

SessionTrace simulate_session(double fps, double duration_s, const PlatformProfile& profile, std::uint64_t seed) {
  StageSet stages = StageSet::synthetic(profile, seed);
  return simulate_session(fps, duration_s, stages);
}

SessionTrace simulate_session(double fps, double duration_s, StageSet& stages) {
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration_s must be positive");

  const auto end_us = static_cast<std::uint64_t>(std::llround(duration_s * 1e6));
  const double period_us = 1e6 / fps;

  SessionTrace trace;
  trace.fps = fps;
  trace.duration_s = duration_s;

  VirtualClock clock;
  std::uint64_t worker_free_us = 0;
  std::deque<std::uint64_t> in_system;  // departure times of frames not yet done, FIFO

  for (std::uint64_t k = 0;; ++k) {
    const auto arrival = static_cast<std::uint64_t>(std::llround(static_cast<double>(k) * period_us));
    if (arrival >= end_us) break;

    // A departure at the same instant as an arrival happens first.
    while (!in_system.empty() && in_system.front() <= arrival) in_system.pop_front();
    trace.queue_length_at_arrival.push_back(in_system.size());
    trace.arrival_ts_us.push_back(arrival);

    clock.set_us(std::max(arrival, worker_free_us));
    TimingRecord rec = process_frame(FrameView{k, 0, 0, {}}, stages, clock);
    worker_free_us = clock.now_us();
    in_system.push_back(worker_free_us);
    trace.records.push_back(rec);
  }

  trace.frames_arrived = trace.records.size();
  trace.frames_completed = static_cast<std::size_t>(
      std::count_if(trace.records.begin(), trace.records.end(), [&](const TimingRecord& r) {
        const std::uint64_t done = r.blink_done_ts_us.value_or(
            std::max({r.recv_ts_us, r.face_done_ts_us.value_or(0), r.landmark_done_ts_us.value_or(0)}));
        return done <= end_us;
      }));
  trace.final_queue_length = trace.frames_arrived - trace.frames_completed;
  return trace;
}

StabilityVerdict queue_stability(const PlatformProfile& profile, double fps) {
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
  validate(profile);
  StabilityVerdict v;
  v.frame_budget_ms = 1000.0 / fps;
  const double total = profile.total_mean_ms();
  v.stable = total <= v.frame_budget_ms;
  v.backlog_growth_rate = v.stable ? 0.0 : std::max(0.0, fps - 1000.0 / total);
  return v;
}

}  // namespace vigil::pipeline
