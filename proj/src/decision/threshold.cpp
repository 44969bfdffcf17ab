#include "vigil/decision/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"

namespace vigil::decision {

namespace {

constexpr double kCostTieTolerance = 1e-12;

CurvePoint evaluate(std::span<const ScoredSequence> sequences, double t, const CostWeights& w) {
  CurvePoint p;
  p.threshold = t;
  p.matrix = confusion(sequences, t);
  const Rates r = rates(p.matrix);
  p.fpr = r.fpr;
  p.fnr = r.fnr;
  p.cost = cost(r, w);
  return p;
}

}  // namespace

std::vector<double> threshold_grid() {
  std::vector<double> grid;
  grid.reserve(21);
  for (int k = 0; k <= 20; ++k) grid.push_back(static_cast<double>(10 + k) / 3.0);
  return grid;
}

double cost(const Rates& r, const CostWeights& w) {
  if (w.w_fn < 0.0 || w.w_fp < 0.0) throw std::invalid_argument("cost weights must be non-negative");
  return w.w_fn * r.fnr + w.w_fp * r.fpr;
}

ThresholdCurve sweep(std::span<const ScoredSequence> sequences, std::span<const double> grid, const CostWeights& w) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty threshold grid");
  ThresholdCurve curve;
  curve.weights = w;
  curve.points.reserve(grid.size());
  for (double t : grid) curve.points.push_back(evaluate(sequences, t, w));
  return curve;
}

OptimizeResult optimize_threshold(std::span<const ScoredSequence> sequences, std::span<const double> grid,
                                  const CostWeights& w) {
  if (sequences.empty()) throw std::invalid_argument("optimize_threshold: empty dataset");
  bool has_alert = false, has_drowsy = false;
  for (const auto& s : sequences) (s.label == Label::Drowsy ? has_drowsy : has_alert) = true;
  if (!has_alert || !has_drowsy) {
    throw DegenerateDataError("optimize_threshold: dataset must contain both Alert and Drowsy sequences");
  }
  const ThresholdCurve curve = sweep(sequences, grid, w);
  // Costs that agree to rounding error are ties; the earlier threshold wins.
  const CurvePoint* best = &curve.points.front();
  for (const auto& p : curve.points) {
    if (p.cost < best->cost - kCostTieTolerance * std::max(1.0, std::abs(best->cost))) best = &p;
  }
  return OptimizeResult{best->threshold, best->cost, rates(best->matrix), best->matrix};
}

std::optional<double> percent_change(double old_value, double new_value) {
  if (old_value == 0.0) {
    if (new_value == 0.0) return 0.0;
    return std::nullopt;
  }
  return (new_value - old_value) / old_value * 100.0;
}

ThresholdComparison compare_to_default(std::span<const ScoredSequence> sequences, double optimal_t, double default_t,
                                       const CostWeights& w) {
  ThresholdComparison c;
  c.optimal = evaluate(sequences, optimal_t, w);
  c.baseline = evaluate(sequences, default_t, w);
  c.fnr_change_pct = percent_change(c.baseline.fnr, c.optimal.fnr);
  c.fpr_change_pct = percent_change(c.baseline.fpr, c.optimal.fpr);
  return c;
}

std::string curve_to_csv(const ThresholdCurve& curve) {
  std::ostringstream os;
  os << "threshold,fpr,fnr,cost\n";
  for (const auto& p : curve.points) {
    os << csv::format_double(p.threshold) << ',' << csv::format_double(p.fpr) << ',' << csv::format_double(p.fnr)
       << ',' << csv::format_double(p.cost) << '\n';
  }
  return os.str();
}

}  // namespace vigil::decision
