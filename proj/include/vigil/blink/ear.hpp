#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vigil::blink {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

// Six-point eye contour: p[0]=p1 outer corner, p[3]=p4 inner corner,
// p[1]/p[2] upper lid (p2, p3), p[5]/p[4] lower lid (p6, p5).
struct EyeLandmarks {
  std::array<Point2, 6> p{};
};

// Eye aspect ratio of one eye: (|p2-p6| + |p3-p5|) / (2 |p1-p4|).
// Throws DegenerateDataError when p1 == p4.
double eye_aspect_ratio(const EyeLandmarks& eye);

// Mean EAR of both eyes.
double ear(const EyeLandmarks& left, const EyeLandmarks& right);

struct EarSample {
  std::uint64_t frame_id = 0;
  std::uint64_t ts_us = 0;
  double ear = 0.0;
  bool operator==(const EarSample&) const = default;
};

// `frame_id,ts_us,ear`
std::string ear_series_to_csv(std::span<const EarSample> series);
std::vector<EarSample> ear_series_from_csv(const std::string& text);

}  // namespace vigil::blink
