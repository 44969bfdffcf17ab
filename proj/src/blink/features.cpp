#include "vigil/blink/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"

namespace vigil::blink {

namespace {

constexpr std::uint64_t kFrequencyWindowUs = 60'000'000;

}  // namespace

BlinkFeatures extract_features(const Blink& blink, std::span<const EarSample> series, double fps,
                               std::span<const std::uint64_t> earlier_apex_ts_us) {
  if (!(fps > 0.0)) throw std::invalid_argument("extract_features: fps must be positive");
  if (!(blink.start_frame <= blink.apex_frame && blink.apex_frame <= blink.end_frame) ||
      blink.min_ear > blink.baseline_ear) {
    throw std::invalid_argument("extract_features: malformed blink");
  }
  std::size_t start, apex;
  try {
    start = index_of(series, blink.start_frame);
    apex = index_of(series, blink.apex_frame);
    index_of(series, blink.end_frame);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("extract_features: blink frames not in series");
  }

  BlinkFeatures f;
  f.amplitude = blink.baseline_ear - blink.min_ear;
  f.duration = static_cast<double>(blink.end_frame - blink.start_frame + 1) / fps;

  double max_drop = 0.0;
  for (std::size_t k = start + 1; k <= apex; ++k) max_drop = std::max(max_drop, series[k - 1].ear - series[k].ear);
  f.velocity = max_drop * fps;

  const std::uint64_t apex_ts = series[apex].ts_us;
  const auto in_window = std::count_if(earlier_apex_ts_us.begin(), earlier_apex_ts_us.end(), [&](std::uint64_t t) {
    return t < apex_ts && apex_ts - t < kFrequencyWindowUs;
  });
  f.frequency = static_cast<double>(in_window + 1) * (60'000'000.0 / static_cast<double>(kFrequencyWindowUs));
  return f;
}

std::vector<BlinkFeatures> extract_all(std::span<const Blink> blinks, std::span<const EarSample> series, double fps) {
  std::vector<BlinkFeatures> out;
  std::vector<std::uint64_t> apex_times;
  out.reserve(blinks.size());
  for (const auto& b : blinks) {
    out.push_back(extract_features(b, series, fps, apex_times));
    apex_times.push_back(series[index_of(series, b.apex_frame)].ts_us);
  }
  return out;
}

BaselineStats baseline_stats(std::span<const BlinkFeatures> alert_blinks) {
  if (alert_blinks.empty()) throw DegenerateDataError("baseline_stats: no alert blinks");
  const std::size_t n = (alert_blinks.size() + 2) / 3;
  std::array<double, 4> mean{}, var{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = alert_blinks[i].as_array();
    for (std::size_t k = 0; k < 4; ++k) mean[k] += v[k];
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = alert_blinks[i].as_array();
    for (std::size_t k = 0; k < 4; ++k) var[k] += (v[k] - mean[k]) * (v[k] - mean[k]);
  }
  std::array<double, 4> sd{};
  for (std::size_t k = 0; k < 4; ++k) sd[k] = std::sqrt(var[k] / static_cast<double>(n));
  return BaselineStats{BlinkFeatures::from_array(mean), BlinkFeatures::from_array(sd), n};
}

bool NormalizedFeatures::any_degenerate() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool d) { return d; });
}

NormalizedFeatures normalize_features(const BlinkFeatures& features, const BaselineStats& baseline) {
  const auto x = features.as_array();
  const auto m = baseline.mean.as_array();
  const auto s = baseline.std.as_array();
  NormalizedFeatures out;
  std::array<double, 4> z{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (s[k] == 0.0) {
      out.degenerate[k] = true;
    } else {
      z[k] = (x[k] - m[k]) / s[k];
    }
  }
  out.z = BlinkFeatures::from_array(z);
  return out;
}

BlinkFeatures denormalize_features(const BlinkFeatures& z, const BaselineStats& baseline) {
  const auto zv = z.as_array();
  const auto m = baseline.mean.as_array();
  const auto s = baseline.std.as_array();
  std::array<double, 4> x{};
  for (std::size_t k = 0; k < 4; ++k) x[k] = zv[k] * s[k] + m[k];
  return BlinkFeatures::from_array(x);
}

std::string features_to_csv(std::span<const BlinkFeatures> features) {
  std::ostringstream os;
  os << "blink_id,amplitude,velocity,duration_s,freq_per_min\n";
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    os << i << ',' << csv::format_double(f.amplitude) << ',' << csv::format_double(f.velocity) << ','
       << csv::format_double(f.duration) << ',' << csv::format_double(f.frequency) << '\n';
  }
  return os.str();
}

std::vector<BlinkFeatures> features_from_csv(const std::string& text) {
  const csv::Table t = csv::parse(text);
  const auto c_a = t.column("amplitude");
  const auto c_v = t.column("velocity");
  const auto c_d = t.column("duration_s");
  const auto c_f = t.column("freq_per_min");
  std::vector<BlinkFeatures> out;
  for (const auto& row : t.rows) {
    out.push_back(BlinkFeatures{csv::to_double(row[c_a]), csv::to_double(row[c_v]), csv::to_double(row[c_d]),
                                csv::to_double(row[c_f])});
  }
  return out;
}

}  // namespace vigil::blink
