#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vigil/decision/confusion.hpp"

namespace vigil::decision {

struct CostWeights {
  double w_fn = 2.0;
  double w_fp = 1.0;
};

inline constexpr double kDefaultThreshold = 20.0 / 3.0;

// The 21 candidate thresholds (10 + k) / 3, k = 0..20: 3.333.. up to exactly 10.
std::vector<double> threshold_grid();

// w_fn * fnr + w_fp * fpr. Throws std::invalid_argument on negative weights.
double cost(const Rates& r, const CostWeights& w = {});

struct CurvePoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double cost = 0.0;
  ConfusionMatrix matrix;
};

struct ThresholdCurve {
  std::vector<CurvePoint> points;  // grid order
  CostWeights weights;
};

// One curve point per grid threshold, in grid order.
ThresholdCurve sweep(std::span<const ScoredSequence> sequences, std::span<const double> grid,
                     const CostWeights& w = {});

struct OptimizeResult {
  double threshold = 0.0;
  double cost = 0.0;
  Rates rates;
  ConfusionMatrix matrix;
};

// Smallest grid threshold with the minimum cost (costs equal to within
// rounding count as ties). Throws DegenerateDataError
// if the dataset lacks either class.
OptimizeResult optimize_threshold(std::span<const ScoredSequence> sequences, std::span<const double> grid,
                                  const CostWeights& w = {});

// (new - old) / old * 100; nullopt when old == 0 and new != 0.
std::optional<double> percent_change(double old_value, double new_value);

struct ThresholdComparison {
  CurvePoint optimal;
  CurvePoint baseline;  // at the default threshold
  std::optional<double> fnr_change_pct;
  std::optional<double> fpr_change_pct;
};

ThresholdComparison compare_to_default(std::span<const ScoredSequence> sequences, double optimal_t,
                                       double default_t = kDefaultThreshold, const CostWeights& w = {});

// `threshold,fpr,fnr,cost`
std::string curve_to_csv(const ThresholdCurve& curve);

}  // namespace vigil::decision
