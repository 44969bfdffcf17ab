#include "vigil/decision/vote.hpp"

#include <stdexcept>

#include <json.hpp>

#include "vigil/common/errors.hpp"

namespace vigil::decision {

using nlohmann::json;

double model_weight(const ModelStats& stats) { return 2.0 * stats.tpr + stats.tnr; }

VoteResult vote_weighted(std::span<const int> decisions, std::span<const double> weights) {
  if (decisions.empty()) throw std::invalid_argument("vote: no models");
  if (decisions.size() != weights.size()) throw std::invalid_argument("vote: decisions and stats differ in length");
  VoteResult r;
  r.weights.assign(weights.begin(), weights.end());
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i] != 0 && decisions[i] != 1) throw std::invalid_argument("vote: decisions must be 0 or 1");
    if (weights[i] < 0.0) throw std::invalid_argument("vote: negative model weight");
    r.normalizer += weights[i];
  }
  if (r.normalizer == 0.0) throw DegenerateDataError("vote: all model weights are zero");
  // Summing in the same order as the normalizer keeps a unanimous vote at exactly 0 or 1.
  double agree = 0.0;
  for (std::size_t i = 0; i < decisions.size(); ++i) agree += weights[i] * decisions[i];
  r.prediction = agree / r.normalizer;
  r.decision = r.prediction > 0.5 ? Label::Drowsy : Label::Alert;
  return r;
}

VoteResult vote(std::span<const int> decisions, std::span<const ModelStats> stats) {
  if (decisions.size() != stats.size()) throw std::invalid_argument("vote: decisions and stats differ in length");
  std::vector<double> weights;
  weights.reserve(stats.size());
  for (const auto& s : stats) {
    if (!(s.tpr >= 0.0 && s.tpr <= 1.0 && s.tnr >= 0.0 && s.tnr <= 1.0)) {
      throw std::invalid_argument("vote: model " + std::to_string(s.model_id) + " has rates outside [0, 1]");
    }
    weights.push_back(model_weight(s));
  }
  return vote_weighted(decisions, weights);
}

std::string model_stats_to_json(std::span<const ModelStats> stats) {
  json arr = json::array();
  for (const auto& s : stats) {
    arr.push_back({{"model_id", s.model_id}, {"tpr", s.tpr}, {"tnr", s.tnr}, {"threshold", s.threshold}});
  }
  return arr.dump(2);
}

std::vector<ModelStats> model_stats_from_json(const std::string& text) {
  try {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw FormatError("model stats JSON must be an array");
    std::vector<ModelStats> out;
    for (const auto& j : arr) {
      ModelStats s;
      s.model_id = j.at("model_id").get<int>();
      s.tpr = j.at("tpr").get<double>();
      s.tnr = j.at("tnr").get<double>();
      s.threshold = j.value("threshold", 20.0 / 3.0);
      out.push_back(s);
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid model stats JSON: ") + e.what());
  }
}

std::string vote_result_to_json(const VoteResult& r) {
  const json j = {{"weights", r.weights},
                  {"normalizer", r.normalizer},
                  {"prediction", r.prediction},
                  {"decision", r.decision == Label::Drowsy ? "drowsy" : "alert"}};
  return j.dump(2);
}

}  // namespace vigil::decision
