// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: vigil_acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vigil/blink/detector.hpp"
#include "vigil/blink/features.hpp"
#include "vigil/decision/confusion.hpp"
#include "vigil/decision/threshold.hpp"
#include "vigil/decision/vote.hpp"
#include "vigil/pipeline/profile.hpp"
#include "vigil/pipeline/simulator.hpp"
#include "vigil/pipeline/timing.hpp"
#include "vigil/synth/ear_series.hpp"
#include "vigil/transport/frame_codec.hpp"
#include "vigil/transport/interval_stats.hpp"
#include "vigil/transport/stream_client.hpp"

using namespace vigil;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

pipeline::ProfileSet load_device(const std::string& name) {
  return pipeline::load_profiles(std::string(VIGIL_PROFILE_DIR) + "/" + name + ".json");
}

// ---------------------------------------------------------------------------

Outcome throughput() {
  transport::StreamConfig cfg;
  cfg.fps = 30;
  cfg.n_frames = 500;
  cfg.width = 1280;
  cfg.height = 720;
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = transport::stream_loopback(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto st = transport::interval_stats(records);
  const double median = st.median_us / 1000.0;
  const double mean = st.mean_us / 1000.0;
  const double target = 1000.0 / 30.0;
  Outcome o;
  o.pass = records.size() == 500 && std::abs(median - target) <= 1.0 && std::abs(mean - target) <= 1.0;
  o.detail = fmt("%zu echoes, interval median %.3f ms, mean %.3f ms (target %.3f +- 1.0)", records.size(), median,
                 mean, target);
  o.notes.push_back(fmt("interval std %.3f ms, min %.3f ms, max %.3f ms; wall clock %.1f s", st.std_us / 1000.0,
                        st.min_us / 1000.0, st.max_us / 1000.0, wall));
  return o;
}

Outcome budget_dichotomy() {
  Outcome o;
  o.pass = true;
  const double fps = 30.0;
  const double session_s = 450 / fps;
  const auto mini = load_device("mini-pc");
  std::vector<pipeline::PlatformProfile> fast(mini.rows.begin(), mini.rows.end());
  fast.push_back(pipeline::average_profile(mini));
  std::size_t worst = 0;
  for (const auto& p : fast) {
    const auto trace = pipeline::simulate_session(fps, session_s, p, 11);
    worst = std::max(worst, trace.max_queue_length());
    o.notes.push_back(fmt("mini-pc %-22s total %.3f ms, max queue %zu", p.label.c_str(), p.total_mean_ms(),
                          trace.max_queue_length()));
    if (trace.frames_arrived != 450 || trace.max_queue_length() > 3) o.pass = false;
  }

  const auto jetson = pipeline::average_profile(load_device("jetson-nano"));
  const double duration = 10.0;
  const auto trace = pipeline::simulate_session(fps, duration, jetson, 11);
  const double expected = (fps - 1000.0 / 94.27) * duration;
  const double backlog = static_cast<double>(trace.final_queue_length);
  const bool within = std::abs(backlog - expected) <= 0.10 * expected;
  if (!within) o.pass = false;
  const auto verdict = pipeline::queue_stability(jetson, fps);
  o.notes.push_back(fmt("jetson aggregate total %.3f ms: backlog %zu after %.0f s, expected %.2f +- 10%%; "
                        "predicted growth %.2f frames/s",
                        jetson.total_mean_ms(), trace.final_queue_length, duration, expected,
                        verdict.backlog_growth_rate));
  o.detail = fmt("mini-pc worst max queue %zu (<= 3); jetson backlog %zu vs %.1f", worst, trace.final_queue_length,
                 expected);
  return o;
}

Outcome timing_recovery() {
  Outcome o;
  o.pass = true;
  const double fps = 30.0;
  const std::size_t n = 450;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_ratio = 0.0;
  for (const char* dev : {"desktop-pc", "jetson-nano", "mini-pc"}) {
    for (const auto& row : load_device(dev).rows) {
      const auto trace = pipeline::simulate_session(fps, n / fps, row, 20240101);
      const auto sum = pipeline::summarize_timings(trace.records);
      const SummaryStats* got[3] = {&sum.face, &sum.landmark, &sum.blink};
      for (std::size_t s = 0; s < 3; ++s) {
        const auto& cfg = row.stages[s];
        const double tol = 3.0 * cfg.std_ms / std::sqrt(static_cast<double>(n));
        const double err = std::abs(got[s]->mean - cfg.mean_ms);
        worst_ratio = std::max(worst_ratio, tol > 0 ? err / tol : 0.0);
        ++checked;
        if (got[s]->count != n || err > tol) {
          ++failed;
          o.notes.push_back(fmt("%s %s %s: recovered %.4f vs %.4f (tol %.4f)", dev, row.label.c_str(),
                                std::string(pipeline::short_name(cfg.name)).c_str(), got[s]->mean, cfg.mean_ms,
                                tol));
        }
      }
    }
  }
  o.pass = failed == 0;
  o.detail = fmt("%zu stage means checked, %zu outside 3sigma/sqrt(450); worst error %.2f of tolerance", checked,
                 failed, worst_ratio);
  return o;
}

struct TableRow {
  int model;
  double cost_opt, fp_opt, fn_opt, t_opt;
  double cost_def, fp_def, fn_def;
};

constexpr TableRow kTable[] = {
    {1, 0.47, 0.35, 0.061, 3.33, 0.59, 0.24, 0.177}, {2, 0.30, 0.22, 0.041, 6.33, 0.31, 0.20, 0.054},
    {3, 0.40, 0.31, 0.043, 5.00, 0.43, 0.21, 0.114}, {4, 0.45, 0.36, 0.055, 5.33, 0.47, 0.26, 0.104},
    {5, 0.43, 0.30, 0.064, 6.33, 0.43, 0.28, 0.077},
};

// Scored dataset with exactly round(fp*n_alert) false positives and
// round(fn*n_drowsy) false negatives at threshold t.
std::vector<decision::ScoredSequence> fixture(double fp, double fn, double t) {
  const std::uint64_t n_alert = 100;
  const std::uint64_t n_drowsy = 1000;
  const auto n_fp = static_cast<std::uint64_t>(std::llround(fp * n_alert));
  const auto n_fn = static_cast<std::uint64_t>(std::llround(fn * n_drowsy));
  const double above = std::min(10.0, t + 1.0);
  const double below = std::max(0.0, t - 1.0);
  std::vector<decision::ScoredSequence> out;
  std::uint64_t id = 0;
  for (std::uint64_t i = 0; i < n_alert; ++i) out.push_back({id++, i < n_fp ? above : below, decision::Label::Alert});
  for (std::uint64_t i = 0; i < n_drowsy; ++i) {
    out.push_back({id++, i < n_fn ? below : above, decision::Label::Drowsy});
  }
  return out;
}

Outcome cost_fixtures() {
  Outcome o;
  o.pass = true;
  std::string bad;
  for (const auto& r : kTable) {
    const auto data = fixture(r.fp_opt, r.fn_opt, r.t_opt);
    const auto rt = decision::rates(decision::confusion(data, r.t_opt));
    const double c = decision::cost(rt);
    const bool ok = std::abs(rt.fpr - r.fp_opt) < 1e-12 && std::abs(rt.fnr - r.fn_opt) < 1e-12 &&
                    std::abs(c - r.cost_opt) <= 0.005;
    if (!ok) {
      o.pass = false;
      bad += (bad.empty() ? "" : ",") + std::to_string(r.model);
    }
    const auto dflt = fixture(r.fp_def, r.fn_def, decision::kDefaultThreshold);
    const double c_def = decision::cost(decision::rates(decision::confusion(dflt, decision::kDefaultThreshold)));
    o.notes.push_back(fmt("model %d: optimal 2*%.3f+%.2f = %.3f vs ref %.2f %s; default %.3f vs ref %.2f", r.model,
                          r.fn_opt, r.fp_opt, c, r.cost_opt, ok ? "ok" : "MISMATCH", c_def, r.cost_def));
  }
  o.detail = o.pass ? "all five optimal-threshold costs within 0.005"
                    : "cost outside 0.005 for model(s) " + bad + " (reference row is internally inconsistent)";
  return o;
}

Outcome percent_changes() {
  const auto& m3 = kTable[2];
  const auto fp = decision::percent_change(m3.fp_def, m3.fp_opt);
  const auto fn = decision::percent_change(m3.fn_def, m3.fn_opt);
  Outcome o;
  o.pass = fp && fn && std::abs(*fp - 47.6) <= 0.1 && std::abs(*fn + 62.3) <= 0.1;
  o.detail = fmt("model 3: FP %+.3f%% (target +47.6), FN %+.3f%% (target -62.3)", fp.value_or(NAN), fn.value_or(NAN));
  o.notes.push_back("the 63.3% FN figure is not reachable from the rounded reference values; -62.3% is");
  return o;
}

// Random score datasets with both classes present; some scores sit exactly on grid points.
std::vector<std::vector<decision::ScoredSequence>> score_corpus() {
  std::vector<std::vector<decision::ScoredSequence>> corpus;
  std::mt19937_64 rng(77);
  for (int d = 0; d < 120; ++d) {
    const auto n = std::uniform_int_distribution<int>(50, 400)(rng);
    const double p_drowsy = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const double mu_a = std::uniform_real_distribution<double>(1.0, 6.0)(rng);
    const double mu_d = std::uniform_real_distribution<double>(4.0, 9.0)(rng);
    const double sd = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    std::vector<decision::ScoredSequence> data;
    bool has_alert = false;
    bool has_drowsy = false;
    for (int i = 0; i < n; ++i) {
      const bool drowsy = std::bernoulli_distribution(p_drowsy)(rng);
      double s = std::normal_distribution<double>(drowsy ? mu_d : mu_a, sd)(rng);
      if (std::bernoulli_distribution(0.1)(rng)) s = (10.0 + std::uniform_int_distribution<int>(0, 20)(rng)) / 3.0;
      s = std::clamp(s, 0.0, 10.0);
      data.push_back({static_cast<std::uint64_t>(i), s, drowsy ? decision::Label::Drowsy : decision::Label::Alert});
      (drowsy ? has_drowsy : has_alert) = true;
    }
    if (has_alert && has_drowsy) corpus.push_back(std::move(data));
  }
  return corpus;
}

Outcome optimizer_oracle() {
  const auto corpus = score_corpus();
  const auto grid = decision::threshold_grid();
  const std::int64_t weight_pairs[][2] = {{2, 1}, {1, 1}, {3, 2}};
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  for (const auto& data : corpus) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (const auto& s : data) (s.label == decision::Label::Drowsy ? pos : neg) += 1;
    for (const auto& w : weight_pairs) {
      // Exact enumeration: cost * pos * neg = w_fn * fn * neg + w_fp * fp * pos.
      std::int64_t best = INT64_MAX;
      std::size_t best_k = 0;
      std::int64_t best_fn = 0;
      std::int64_t best_fp = 0;
      for (int k = 0; k <= 20; ++k) {
        const double t = (10.0 + k) / 3.0;
        std::int64_t fn = 0;
        std::int64_t fp = 0;
        for (const auto& s : data) {
          const bool flagged = s.score >= t;
          if (s.label == decision::Label::Drowsy && !flagged) ++fn;
          if (s.label == decision::Label::Alert && flagged) ++fp;
        }
        const std::int64_t scaled = w[0] * fn * neg + w[1] * fp * pos;
        if (scaled < best) {
          best = scaled;
          best_k = static_cast<std::size_t>(k);
          best_fn = fn;
          best_fp = fp;
        }
      }
      const auto r = decision::optimize_threshold(
          data, grid, decision::CostWeights{static_cast<double>(w[0]), static_cast<double>(w[1])});
      const std::int64_t got = w[0] * static_cast<std::int64_t>(r.matrix.fn) * neg +
                               w[1] * static_cast<std::int64_t>(r.matrix.fp) * pos;
      ++cases;
      if (got != best || r.threshold != grid[best_k] || static_cast<std::int64_t>(r.matrix.fn) != best_fn ||
          static_cast<std::int64_t>(r.matrix.fp) != best_fp) {
        ++mismatches;
      }
    }
  }
  Outcome o;
  o.pass = corpus.size() >= 100 && mismatches == 0;
  o.detail = fmt("%zu datasets x 3 weightings = %zu optimizations, %zu disagree with exact enumeration", corpus.size(),
                 cases, mismatches);
  return o;
}

Outcome sweep_monotone() {
  const auto corpus = score_corpus();
  const auto grid = decision::threshold_grid();
  std::size_t violations = 0;
  for (const auto& data : corpus) {
    const auto curve = decision::sweep(data, grid);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      if (curve.points[i].fpr > curve.points[i - 1].fpr) ++violations;
      if (curve.points[i].fnr < curve.points[i - 1].fnr) ++violations;
    }
  }
  Outcome o;
  o.pass = corpus.size() >= 100 && violations == 0;
  o.detail = fmt("%zu sweeps of %zu points, %zu monotonicity violations", corpus.size(), grid.size(), violations);
  return o;
}

Outcome voting_properties() {
  std::mt19937_64 rng(8);
  std::size_t range_bad = 0;
  std::size_t flip_bad = 0;
  std::size_t unanimous_bad = 0;
  std::size_t scale_bad = 0;
  double worst_scale = 0.0;
  const int ensembles = 1000;
  for (int e = 0; e < ensembles; ++e) {
    const auto n = std::uniform_int_distribution<int>(1, 9)(rng);
    std::vector<decision::ModelStats> stats;
    std::vector<int> b;
    for (int i = 0; i < n; ++i) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      stats.push_back({i + 1, u(rng), u(rng)});
      b.push_back(std::bernoulli_distribution(0.5)(rng) ? 1 : 0);
    }
    if (std::all_of(stats.begin(), stats.end(), [](const auto& s) { return decision::model_weight(s) == 0.0; })) {
      continue;
    }
    const auto res = decision::vote(b, stats);
    if (!(res.prediction >= 0.0 && res.prediction <= 1.0)) ++range_bad;
    for (int i = 0; i < n; ++i) {
      if (b[i] != 0) continue;
      auto flipped = b;
      flipped[i] = 1;
      if (decision::vote(flipped, stats).prediction < res.prediction) ++flip_bad;
    }
    const std::vector<int> zeros(n, 0);
    const std::vector<int> ones(n, 1);
    if (decision::vote(zeros, stats).prediction != 0.0) ++unanimous_bad;
    if (decision::vote(ones, stats).prediction != 1.0) ++unanimous_bad;
    std::vector<double> scaled;
    for (const auto& s : stats) scaled.push_back(7.0 * decision::model_weight(s));
    const double diff = std::abs(decision::vote_weighted(b, scaled).prediction - res.prediction);
    worst_scale = std::max(worst_scale, diff);
    if (diff > 1e-12) ++scale_bad;
  }
  Outcome o;
  o.pass = range_bad + flip_bad + unanimous_bad + scale_bad == 0;
  o.detail = fmt("%d ensembles: range %zu, flip %zu, unanimity %zu, scale %zu violations", ensembles, range_bad,
                 flip_bad, unanimous_bad, scale_bad);
  o.notes.push_back(fmt("largest |P - P(7V)| = %.3g", worst_scale));
  return o;
}

Outcome grid_exactness() {
  const auto g = decision::threshold_grid();
  Outcome o;
  o.pass = g.size() == 21 && std::abs(g.front() - 10.0 / 3.0) <= 1e-12 && g.back() == 10.0;
  o.detail = fmt("length %zu, first %.15f, last %.17g", g.size(), g.empty() ? NAN : g.front(),
                 g.empty() ? NAN : g.back());
  return o;
}

// Where the detector's boundary rule puts a scripted blink: the nearest
// samples at/above the threshold on the ramps.
struct ProjectedBlink {
  std::uint64_t start, apex, end;
};

ProjectedBlink project(const synth::ScriptedBlink& b, double thr) {
  const double depth = b.baseline_ear - b.trough_ear;
  const std::uint32_t d = b.descent_frames;
  std::uint64_t start = b.last_open_frame();
  for (std::uint32_t j = 1; j < d; ++j) {
    if (b.baseline_ear - depth * j / d >= thr) start = b.onset_frame + j - 1;
  }
  std::uint64_t end = b.recovery_frame();
  for (std::uint32_t j = d - 1; j >= 1; --j) {
    if (b.trough_ear + depth * j / d >= thr) end = b.apex_frame() + b.closed_frames + j - 1;
  }
  return {start, b.apex_frame(), end};
}

Outcome blink_oracle() {
  const double thr = 0.2;
  std::size_t traces = 0;
  std::size_t blinks = 0;
  std::size_t frame_bad = 0;
  std::size_t truth_bad = 0;
  std::size_t feature_bad = 0;
  std::size_t raw_boundary_equal = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    synth::RandomScriptOptions opts;
    opts.n_blinks = 2 + seed % 4;
    const auto script = synth::random_script(opts, seed);
    const auto gen = synth::gen_ear_series(script);
    const auto found = blink::detect_blinks(gen.samples, blink::DetectorConfig{thr, 2});
    ++traces;
    if (found.size() != gen.truth.size()) {
      truth_bad += 1;
      continue;
    }
    const auto feats = blink::extract_all(found, gen.samples, script.fps);
    for (std::size_t i = 0; i < found.size(); ++i) {
      ++blinks;
      const auto& sb = script.blinks[i];
      const auto& truth = gen.truth[i];
      const auto& got = found[i];
      const auto p = project(sb, thr);
      if (got.apex_frame != truth.apex_frame || got.min_ear != truth.min_ear ||
          got.baseline_ear != truth.baseline_ear) {
        ++truth_bad;
      }
      if (got.start_frame != p.start || got.end_frame != p.end || got.apex_frame != p.apex) ++frame_bad;
      if (got.start_frame == truth.start_frame && got.end_frame == truth.end_frame) ++raw_boundary_equal;

      const double amplitude = sb.baseline_ear - sb.trough_ear;
      const double velocity = amplitude / sb.descent_frames * script.fps;
      const double duration = static_cast<double>(p.end - p.start + 1) / script.fps;
      const double err = std::max({std::abs(feats[i].amplitude - amplitude), std::abs(feats[i].velocity - velocity),
                                   std::abs(feats[i].duration - duration)});
      worst = std::max(worst, err);
      if (err > 1e-9) ++feature_bad;
    }
  }
  Outcome o;
  o.pass = truth_bad == 0 && frame_bad == 0 && feature_bad == 0;
  o.detail = fmt("%zu traces, %zu blinks: count/apex/trough/baseline mismatches %zu, boundary mismatches %zu, "
                 "feature mismatches %zu",
                 traces, blinks, truth_bad, frame_bad, feature_bad);
  o.notes.push_back(fmt("largest feature error %.3g; boundaries are the scripted ramps cut at EAR %.2f "
                        "(%zu of %zu blinks coincide with the last-open/recovery frames)",
                        worst, thr, raw_boundary_equal, blinks));
  return o;
}

Outcome codec_roundtrip() {
  std::mt19937_64 rng(1234);
  std::size_t failures = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    transport::FrameMessage m;
    m.msg_type = std::bernoulli_distribution(0.5)(rng) ? transport::MsgType::Echo : transport::MsgType::Frame;
    m.frame_id = rng();
    m.capture_ts_us = rng();
    m.width = static_cast<std::uint16_t>(std::uniform_int_distribution<int>(0, 48)(rng));
    m.height = static_cast<std::uint16_t>(std::uniform_int_distribution<int>(0, 48)(rng));
    m.pixel_format =
        std::bernoulli_distribution(0.8)(rng) ? transport::PixelFormat::RGB24 : transport::PixelFormat::Empty;
    m.payload.resize(transport::expected_payload_size(m.width, m.height, m.pixel_format));
    for (auto& byte : m.payload) byte = static_cast<std::uint8_t>(rng());
    if (m.msg_type == transport::MsgType::Echo) {
      const std::uint64_t a = rng();
      const std::uint64_t b = rng();
      m.server_recv_ts_us = std::min(a, b);
      m.server_send_ts_us = std::max(a, b);
    }
    try {
      const auto bytes = transport::encode_frame(m);
      const auto back = transport::decode_frame(bytes);
      if (!(back == m) || transport::encode_frame(back) != bytes) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = fmt("%d random messages, %zu failed to roundtrip bit-exactly", n, failures);
  return o;
}

Outcome bandwidth() {
  const auto bps = transport::raw_bandwidth(1280, 720, 24, 30);
  Outcome o;
  o.pass = bps == 663'552'000ULL;
  o.detail = fmt("raw_bandwidth(1280, 720, 24, 30) = %llu bit/s", static_cast<unsigned long long>(bps));
  o.notes.push_back("= 663.552 Mbit/s; a quoted figure of 632 Mbps matches 663552000 / 2^20 (MiB-style units)");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "loopback throughput at 30 fps", throughput},
      {2, "real-time budget dichotomy", budget_dichotomy},
      {3, "per-stage timing recovery", timing_recovery},
      {4, "cost fixtures", cost_fixtures},
      {5, "percent-change claims", percent_changes},
      {6, "optimizer oracle equivalence", optimizer_oracle},
      {7, "sweep monotonicity", sweep_monotone},
      {8, "voting properties", voting_properties},
      {9, "threshold grid exactness", grid_exactness},
      {10, "blink pipeline oracle", blink_oracle},
      {11, "codec roundtrip", codec_roundtrip},
      {12, "raw bandwidth", bandwidth},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
