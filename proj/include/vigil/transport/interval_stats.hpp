#pragma once

#include <cstddef>
#include <span>

#include "vigil/transport/stream_client.hpp"

namespace vigil::transport {

// Inter-arrival statistics in microseconds. std_us is the population std.
struct IntervalStats {
  std::size_t count = 0;
  double mean_us = 0.0;
  double std_us = 0.0;
  double median_us = 0.0;
  double min_us = 0.0;
  double max_us = 0.0;
};

// Statistics over the inter_arrival_us gaps of `records`. Needs at least two
// records (one gap); throws std::invalid_argument otherwise.
IntervalStats interval_stats(std::span<const RoundTripRecord> records);

}  // namespace vigil::transport
