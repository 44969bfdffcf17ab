#pragma once

#include <span>
#include <string>
#include <vector>

#include "vigil/decision/confusion.hpp"

namespace vigil::decision {

struct ModelStats {
  int model_id = 0;
  double tpr = 0.0;
  double tnr = 0.0;
  double threshold = 20.0 / 3.0;  // optimized decision threshold for this model
};

// V = 2 * tpr + tnr: sensitivity counts double.
double model_weight(const ModelStats& stats);

struct VoteResult {
  std::vector<double> weights;  // V_i
  double normalizer = 0.0;      // S = sum V_i
  double prediction = 0.0;      // P = sum (V_i / S) b_i
  Label decision = Label::Alert;  // Drowsy iff P > 0.5
};

// Weighted vote over per-model binary decisions (0 or 1). Throws
// std::invalid_argument on empty or misaligned input and
// DegenerateDataError when every weight is zero.
VoteResult vote(std::span<const int> decisions, std::span<const ModelStats> stats);

// Same combination rule with explicit weights.
VoteResult vote_weighted(std::span<const int> decisions, std::span<const double> weights);

// `[{"model_id":1,"tpr":..,"tnr":..,"threshold":..}, ...]`
std::string model_stats_to_json(std::span<const ModelStats> stats);
std::vector<ModelStats> model_stats_from_json(const std::string& text);

std::string vote_result_to_json(const VoteResult& result);

}  // namespace vigil::decision
