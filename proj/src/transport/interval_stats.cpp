#include "vigil/transport/interval_stats.hpp"

#include <stdexcept>
#include <vector>

#include "vigil/common/stats.hpp"

namespace vigil::transport {

IntervalStats interval_stats(std::span<const RoundTripRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("interval_stats needs at least 2 records");
  std::vector<double> gaps;
  gaps.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    gaps.push_back(r.inter_arrival_us
                       ? static_cast<double>(*r.inter_arrival_us)
                       : static_cast<double>(r.client_recv_ts_us - records[i - 1].client_recv_ts_us));
  }
  const SummaryStats s = summarize(gaps);
  return IntervalStats{s.count, s.mean, s.std, s.median, s.min, s.max};
}

}  // namespace vigil::transport
