#include "vigil/pipeline/timing.hpp"

#include <sstream>
#include <stdexcept>

#include "vigil/common/csv.hpp"

namespace vigil::pipeline {

StageDurations durations(const TimingRecord& rec) {
  if (!rec.complete() || !rec.face_done_ts_us || !rec.landmark_done_ts_us) {
    throw std::invalid_argument("record for frame " + std::to_string(rec.frame_id) + " is incomplete");
  }
  auto ms = [](std::uint64_t from, std::uint64_t to) { return static_cast<double>(to - from) / 1000.0; };
  StageDurations d;
  d.frame_id = rec.frame_id;
  d.face_ms = ms(rec.recv_ts_us, *rec.face_done_ts_us);
  d.landmark_ms = ms(*rec.face_done_ts_us, *rec.landmark_done_ts_us);
  d.blink_ms = ms(*rec.landmark_done_ts_us, *rec.blink_done_ts_us);
  d.total_ms = ms(rec.recv_ts_us, *rec.blink_done_ts_us);
  return d;
}

TimingSummary summarize_durations(std::span<const StageDurations> rows) {
  if (rows.empty()) throw std::invalid_argument("no complete timing records");
  std::vector<double> face, landmark, blink, total;
  for (const auto& d : rows) {
    face.push_back(d.face_ms);
    landmark.push_back(d.landmark_ms);
    blink.push_back(d.blink_ms);
    total.push_back(d.total_ms);
  }
  return TimingSummary{summarize(face), summarize(landmark), summarize(blink), summarize(total)};
}

TimingSummary summarize_timings(std::span<const TimingRecord> records) {
  std::vector<StageDurations> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    if (r.complete()) rows.push_back(durations(r));
  }
  return summarize_durations(rows);
}

std::string durations_to_csv(std::span<const TimingRecord> records) {
  std::ostringstream os;
  os << "frame_id,face_ms,landmark_ms,blink_ms,total_ms\n";
  for (const auto& r : records) {
    if (!r.complete()) continue;
    const auto d = durations(r);
    os << d.frame_id << ',' << csv::format_double(d.face_ms) << ',' << csv::format_double(d.landmark_ms) << ','
       << csv::format_double(d.blink_ms) << ',' << csv::format_double(d.total_ms) << '\n';
  }
  return os.str();
}

std::vector<StageDurations> durations_from_csv(const std::string& text) {
  const csv::Table t = csv::parse(text);
  const auto c_id = t.column("frame_id");
  const auto c_face = t.column("face_ms");
  const auto c_lm = t.column("landmark_ms");
  const auto c_blink = t.column("blink_ms");
  const auto c_total = t.column("total_ms");
  std::vector<StageDurations> out;
  for (const auto& row : t.rows) {
    out.push_back(StageDurations{csv::to_uint(row[c_id]), csv::to_double(row[c_face]), csv::to_double(row[c_lm]),
                                 csv::to_double(row[c_blink]), csv::to_double(row[c_total])});
  }
  return out;
}

}  // namespace vigil::pipeline
