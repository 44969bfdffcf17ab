#pragma once

#include <cstdint>
#include <vector>

#include "vigil/decision/confusion.hpp"

namespace vigil::synth {

struct ScoreDistribution {
  double mean = 5.0;
  double std = 1.0;
};

struct ScoreDatasetSpec {
  std::uint64_t n_alert = 0;
  std::uint64_t n_drowsy = 0;
  ScoreDistribution alert{2.0, 1.0};
  ScoreDistribution drowsy{8.0, 1.0};
  std::uint64_t seed = 0;
};

// Alert items first (ids 0..n_alert-1), then drowsy items. Scores are normal
// draws clamped to [0, 10]. Throws std::invalid_argument if both counts are
// zero or a std is negative.
std::vector<decision::ScoredSequence> gen_score_dataset(const ScoreDatasetSpec& spec);

}  // namespace vigil::synth
