#include "vigil/blink/ear.hpp"

#include <cmath>
#include <sstream>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"

namespace vigil::blink {

namespace {

double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

double eye_aspect_ratio(const EyeLandmarks& eye) {
  const auto& p = eye.p;
  const double width = dist(p[0], p[3]);
  if (width == 0.0) throw DegenerateDataError("degenerate eye: outer and inner corners coincide");
  return (dist(p[1], p[5]) + dist(p[2], p[4])) / (2.0 * width);
}

double ear(const EyeLandmarks& left, const EyeLandmarks& right) {
  return 0.5 * (eye_aspect_ratio(left) + eye_aspect_ratio(right));
}

std::string ear_series_to_csv(std::span<const EarSample> series) {
  std::ostringstream os;
  os << "frame_id,ts_us,ear\n";
  for (const auto& s : series) os << s.frame_id << ',' << s.ts_us << ',' << csv::format_double(s.ear) << '\n';
  return os.str();
}

std::vector<EarSample> ear_series_from_csv(const std::string& text) {
  const csv::Table t = csv::parse(text);
  const auto c_id = t.column("frame_id");
  const auto c_ts = t.column("ts_us");
  const auto c_ear = t.column("ear");
  std::vector<EarSample> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    EarSample s{csv::to_uint(row[c_id]), csv::to_uint(row[c_ts]), csv::to_double(row[c_ear])};
    if (s.ear < 0.0) throw FormatError("negative EAR at frame " + std::to_string(s.frame_id));
    out.push_back(s);
  }
  return out;
}

}  // namespace vigil::blink
