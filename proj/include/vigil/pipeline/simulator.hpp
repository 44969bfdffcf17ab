#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vigil/pipeline/profile.hpp"
#include "vigil/pipeline/stage.hpp"

namespace vigil::pipeline {

struct SessionTrace {
  std::vector<TimingRecord> records;              // sorted by frame_id
  std::vector<std::uint64_t> arrival_ts_us;       // per frame
  std::vector<std::size_t> queue_length_at_arrival;  // frames already in the system
  std::size_t dropped = 0;                        // always 0: the queue is unbounded
  double fps = 0.0;
  double duration_s = 0.0;

  std::size_t frames_arrived = 0;    // arrivals before the end of the session
  std::size_t frames_completed = 0;  // completions by the end of the session
  std::size_t final_queue_length = 0;

  std::size_t max_queue_length() const;
};

struct StabilityVerdict {
  bool stable = true;
  double backlog_growth_rate = 0.0;  // frames/s, 0 when stable
  double frame_budget_ms = 0.0;
};

// Discrete-event simulation on a virtual clock: a frame arrives every 1/fps,
// a single worker serves them FIFO through the synthetic stages, and
// service time is the sum of the sampled stage times. Every arrived frame
// is served (records may extend past the session end); the backlog counters
// are taken at duration_s. Deterministic for a given seed.
SessionTrace simulate_session(double fps, double duration_s, const PlatformProfile& profile, std::uint64_t seed);

// Same, with caller-supplied stages (e.g. with injected failures).
SessionTrace simulate_session(double fps, double duration_s, StageSet& stages);

// stable iff the summed stage means fit inside the 1000/fps budget (a
// critically loaded pipeline counts as stable: its backlog does not grow);
// otherwise
// the backlog grows at fps - 1000/total_mean frames per second.
StabilityVerdict queue_stability(const PlatformProfile& profile, double fps);

}  // namespace vigil::pipeline
