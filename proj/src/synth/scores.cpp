#include "vigil/synth/scores.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace vigil::synth {

std::vector<decision::ScoredSequence> gen_score_dataset(const ScoreDatasetSpec& spec) {
  if (spec.n_alert == 0 && spec.n_drowsy == 0) throw std::invalid_argument("score dataset needs at least one item");
  if (spec.alert.std < 0.0 || spec.drowsy.std < 0.0) throw std::invalid_argument("score std must be >= 0");

  std::mt19937_64 rng(spec.seed);
  std::vector<decision::ScoredSequence> out;
  out.reserve(spec.n_alert + spec.n_drowsy);
  auto draw = [&](const ScoreDistribution& d) {
    if (d.std == 0.0) return std::clamp(d.mean, 0.0, 10.0);
    std::normal_distribution<double> normal(d.mean, d.std);
    return std::clamp(normal(rng), 0.0, 10.0);
  };
  std::uint64_t id = 0;
  for (std::uint64_t i = 0; i < spec.n_alert; ++i) {
    out.push_back({id++, draw(spec.alert), decision::Label::Alert});
  }
  for (std::uint64_t i = 0; i < spec.n_drowsy; ++i) {
    out.push_back({id++, draw(spec.drowsy), decision::Label::Drowsy});
  }
  return out;
}

}  // namespace vigil::synth
