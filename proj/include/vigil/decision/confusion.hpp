#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vigil::decision {

// Low-vigilance and drowsy are merged into Drowsy upstream.
enum class Label : int { Alert = 0, Drowsy = 10 };

struct ScoredSequence {
  std::uint64_t id = 0;
  double score = 0.0;  // model output on the 0..10 scale
  Label label = Label::Alert;

  bool operator==(const ScoredSequence&) const = default;
};

// Positive class is Drowsy.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Per-class rates. A rate whose denominator is empty is 0 and flagged.
struct Rates {
  double fpr = 0.0;  // fp / (fp + tn)
  double fnr = 0.0;  // fn / (fn + tp)
  double tpr = 0.0;  // 1 - fnr
  double tnr = 0.0;  // 1 - fpr
  bool no_alert = false;   // fp + tn == 0
  bool no_drowsy = false;  // fn + tp == 0

  bool degenerate() const noexcept { return no_alert || no_drowsy; }
};

Rates rates(const ConfusionMatrix& cm);

// 1 (Drowsy) iff score >= threshold. Throws std::invalid_argument for a
// score outside [0, 10].
int classify_score(double score, double threshold);

// Throws std::invalid_argument on an empty dataset.
ConfusionMatrix confusion(std::span<const ScoredSequence> sequences, double threshold);

// `id,score,label` with label 0 or 10.
std::string scores_to_csv(std::span<const ScoredSequence> sequences);
std::vector<ScoredSequence> scores_from_csv(const std::string& text);

}  // namespace vigil::decision
