#include "vigil/decision/confusion.hpp"

#include <sstream>
#include <stdexcept>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"

namespace vigil::decision {

Rates rates(const ConfusionMatrix& cm) {
  Rates r;
  const auto negatives = cm.fp + cm.tn;
  const auto positives = cm.fn + cm.tp;
  r.no_alert = negatives == 0;
  r.no_drowsy = positives == 0;
  if (!r.no_alert) {
    r.fpr = static_cast<double>(cm.fp) / static_cast<double>(negatives);
    r.tnr = 1.0 - r.fpr;
  }
  if (!r.no_drowsy) {
    r.fnr = static_cast<double>(cm.fn) / static_cast<double>(positives);
    r.tpr = 1.0 - r.fnr;
  }
  return r;
}

int classify_score(double score, double threshold) {
  if (!(score >= 0.0 && score <= 10.0)) {
    throw std::invalid_argument("score " + std::to_string(score) + " outside [0, 10]");
  }
  return score >= threshold ? 1 : 0;
}

ConfusionMatrix confusion(std::span<const ScoredSequence> sequences, double threshold) {
  if (sequences.empty()) throw std::invalid_argument("confusion: empty dataset");
  ConfusionMatrix cm;
  for (const auto& s : sequences) {
    const bool predicted = classify_score(s.score, threshold) == 1;
    const bool actual = s.label == Label::Drowsy;
    if (predicted && actual) ++cm.tp;
    else if (predicted) ++cm.fp;
    else if (actual) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

std::string scores_to_csv(std::span<const ScoredSequence> sequences) {
  std::ostringstream os;
  os << "id,score,label\n";
  for (const auto& s : sequences) {
    os << s.id << ',' << csv::format_double(s.score) << ',' << static_cast<int>(s.label) << '\n';
  }
  return os.str();
}

std::vector<ScoredSequence> scores_from_csv(const std::string& text) {
  const csv::Table t = csv::parse(text);
  const auto c_id = t.column("id");
  const auto c_score = t.column("score");
  const auto c_label = t.column("label");
  std::vector<ScoredSequence> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    ScoredSequence s;
    s.id = csv::to_uint(row[c_id]);
    s.score = csv::to_double(row[c_score]);
    if (!(s.score >= 0.0 && s.score <= 10.0)) throw FormatError("score outside [0, 10] for id " + row[c_id]);
    const auto label = csv::to_int(row[c_label]);
    if (label == 0) s.label = Label::Alert;
    else if (label == 10) s.label = Label::Drowsy;
    else throw FormatError("label must be 0 or 10, got " + row[c_label]);
    out.push_back(s);
  }
  return out;
}

}  // namespace vigil::decision
