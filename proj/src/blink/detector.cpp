#include "vigil/blink/detector.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vigil/common/stats.hpp"

namespace vigil::blink {

std::size_t index_of(std::span<const EarSample> series, std::uint64_t frame_id) {
  auto it = std::lower_bound(series.begin(), series.end(), frame_id,
                             [](const EarSample& s, std::uint64_t id) { return s.frame_id < id; });
  if (it == series.end() || it->frame_id != frame_id) {
    throw std::out_of_range("frame " + std::to_string(frame_id) + " not in series");
  }
  return static_cast<std::size_t>(it - series.begin());
}

std::vector<Blink> detect_blinks(std::span<const EarSample> series, const DetectorConfig& cfg) {
  if (series.empty()) throw std::invalid_argument("detect_blinks: empty EAR series");
  if (!(cfg.close_threshold > 0.0) || cfg.min_closed_frames == 0) {
    throw std::invalid_argument("detect_blinks: thresholds must be positive");
  }
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].frame_id <= series[i - 1].frame_id) {
      throw std::invalid_argument("detect_blinks: series must be sorted by frame_id");
    }
  }

  std::vector<Blink> blinks;
  const std::size_t n = series.size();
  std::size_t i = 0;
  while (i < n) {
    if (!(series[i].ear < cfg.close_threshold)) {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    while (i < n && series[i].ear < cfg.close_threshold) ++i;
    const std::size_t run_end = i - 1;
    if (run_end - run_begin + 1 < cfg.min_closed_frames) continue;

    const std::size_t start = run_begin > 0 ? run_begin - 1 : run_begin;
    const std::size_t end = run_end + 1 < n ? run_end + 1 : run_end;

    std::size_t apex = run_begin;
    for (std::size_t k = run_begin + 1; k <= run_end; ++k) {
      if (series[k].ear < series[apex].ear) apex = k;
    }

    const std::size_t window_begin = start >= cfg.baseline_window ? start - cfg.baseline_window : 0;
    double baseline;
    if (window_begin < start) {
      std::vector<double> window;
      for (std::size_t k = window_begin; k < start; ++k) window.push_back(series[k].ear);
      baseline = median_of(window);
    } else {
      baseline = series[start].ear;
    }

    Blink b;
    b.start_frame = series[start].frame_id;
    b.apex_frame = series[apex].frame_id;
    b.end_frame = series[end].frame_id;
    b.min_ear = series[apex].ear;
    b.baseline_ear = std::max(baseline, b.min_ear);
    blinks.push_back(b);
  }
  return blinks;
}

}  // namespace vigil::blink
