#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "vigil/blink/detector.hpp"
#include "vigil/blink/ear.hpp"
#include "vigil/blink/features.hpp"
#include "vigil/common/errors.hpp"
#include "vigil/decision/confusion.hpp"
#include "vigil/decision/threshold.hpp"
#include "vigil/decision/vote.hpp"
#include "vigil/pipeline/profile.hpp"
#include "vigil/pipeline/simulator.hpp"
#include "vigil/pipeline/timing.hpp"
#include "vigil/synth/ear_series.hpp"
#include "vigil/synth/scores.hpp"
#include "vigil/transport/frame_codec.hpp"
#include "vigil/transport/interval_stats.hpp"
#include "vigil/transport/stream_client.hpp"

namespace py = pybind11;
using namespace vigil;

namespace {

py::bytes encode(const transport::FrameMessage& m) {
  const auto v = transport::encode_frame(m);
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

transport::FrameMessage decode(const py::bytes& b) {
  const std::string s = b;
  return transport::decode_frame(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::vector<blink::EarSample> to_series(const std::vector<double>& ear, double fps) {
  std::vector<blink::EarSample> out;
  out.reserve(ear.size());
  for (std::size_t i = 0; i < ear.size(); ++i) {
    out.push_back({i, static_cast<std::uint64_t>(std::llround(i * 1e6 / fps)), ear[i]});
  }
  return out;
}

std::vector<decision::ScoredSequence> to_sequences(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  std::vector<decision::ScoredSequence> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 10 && labels[i] != 1) throw std::invalid_argument("labels must be 0 or 1 (or 10)");
    out.push_back({i, scores[i], labels[i] ? decision::Label::Drowsy : decision::Label::Alert});
  }
  return out;
}

py::dict summary_dict(const SummaryStats& s) {
  py::dict d;
  d["count"] = s.count;
  d["mean"] = s.mean;
  d["std"] = s.std;
  d["median"] = s.median;
  d["min"] = s.min;
  d["max"] = s.max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vigil, m) {
  m.doc() = "Streaming, pipeline-timing and drowsiness-decision toolkit";

  py::register_exception<DegenerateDataError>(m, "DegenerateDataError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<transport::CodecError>(m, "CodecError", PyExc_ValueError);
  py::register_exception<transport::TransportError>(m, "TransportError", PyExc_OSError);
  py::register_exception<transport::ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  // transport
  py::enum_<transport::MsgType>(m, "MsgType").value("Frame", transport::MsgType::Frame).value("Echo", transport::MsgType::Echo);
  py::enum_<transport::PixelFormat>(m, "PixelFormat")
      .value("RGB24", transport::PixelFormat::RGB24)
      .value("Empty", transport::PixelFormat::Empty);

  py::class_<transport::FrameMessage>(m, "FrameMessage")
      .def(py::init<>())
      .def_readwrite("msg_type", &transport::FrameMessage::msg_type)
      .def_readwrite("frame_id", &transport::FrameMessage::frame_id)
      .def_readwrite("capture_ts_us", &transport::FrameMessage::capture_ts_us)
      .def_readwrite("width", &transport::FrameMessage::width)
      .def_readwrite("height", &transport::FrameMessage::height)
      .def_readwrite("pixel_format", &transport::FrameMessage::pixel_format)
      .def_property(
          "payload",
          [](const transport::FrameMessage& f) {
            return py::bytes(reinterpret_cast<const char*>(f.payload.data()), f.payload.size());
          },
          [](transport::FrameMessage& f, const py::bytes& b) {
            const std::string s = b;
            f.payload.assign(s.begin(), s.end());
          })
      .def_readwrite("server_recv_ts_us", &transport::FrameMessage::server_recv_ts_us)
      .def_readwrite("server_send_ts_us", &transport::FrameMessage::server_send_ts_us)
      .def(py::self == py::self);

  m.def("encode_frame", &encode, py::arg("msg"));
  m.def("decode_frame", &decode, py::arg("data"));
  m.def("raw_bandwidth", &transport::raw_bandwidth, py::arg("width"), py::arg("height"), py::arg("bits_per_pixel"),
        py::arg("fps"));

  py::class_<transport::RoundTripRecord>(m, "RoundTripRecord")
      .def_readonly("frame_id", &transport::RoundTripRecord::frame_id)
      .def_readonly("client_send_ts_us", &transport::RoundTripRecord::client_send_ts_us)
      .def_readonly("client_recv_ts_us", &transport::RoundTripRecord::client_recv_ts_us)
      .def_readonly("rtt_us", &transport::RoundTripRecord::rtt_us)
      .def_readonly("inter_arrival_us", &transport::RoundTripRecord::inter_arrival_us);

  m.def(
      "stream_loopback",
      [](double fps, std::uint64_t n_frames, std::uint16_t width, std::uint16_t height) {
        transport::StreamConfig cfg;
        cfg.fps = fps;
        cfg.n_frames = n_frames;
        cfg.width = width;
        cfg.height = height;
        py::gil_scoped_release release;
        return transport::stream_loopback(cfg);
      },
      py::arg("fps") = 30.0, py::arg("n_frames") = 500, py::arg("width") = 1280, py::arg("height") = 720);
  m.def(
      "interval_stats",
      [](const std::vector<transport::RoundTripRecord>& records) {
        const auto s = transport::interval_stats(records);
        py::dict d;
        d["count"] = s.count;
        d["mean_us"] = s.mean_us;
        d["std_us"] = s.std_us;
        d["median_us"] = s.median_us;
        d["min_us"] = s.min_us;
        d["max_us"] = s.max_us;
        return d;
      },
      py::arg("records"));

  // pipeline
  py::class_<pipeline::PlatformProfile>(m, "PlatformProfile")
      .def_readonly("label", &pipeline::PlatformProfile::label)
      .def("total_mean_ms", &pipeline::PlatformProfile::total_mean_ms)
      .def("stage_means_ms", [](const pipeline::PlatformProfile& p) {
        return std::vector<double>{p.stages[0].mean_ms, p.stages[1].mean_ms, p.stages[2].mean_ms};
      });
  m.def(
      "load_profiles", [](const std::string& path) { return pipeline::load_profiles(path).rows; }, py::arg("path"));
  m.def("deterministic_profile", &pipeline::deterministic_profile, py::arg("label"), py::arg("face_ms"),
        py::arg("landmark_ms"), py::arg("blink_ms"));
  m.def(
      "simulate_session",
      [](const pipeline::PlatformProfile& profile, double fps, double duration_s, std::uint64_t seed) {
        const auto t = pipeline::simulate_session(fps, duration_s, profile, seed);
        const auto s = pipeline::summarize_timings(t.records);
        py::dict d;
        d["frames_arrived"] = t.frames_arrived;
        d["frames_completed"] = t.frames_completed;
        d["final_queue_length"] = t.final_queue_length;
        d["max_queue_length"] = t.max_queue_length();
        d["face"] = summary_dict(s.face);
        d["landmark"] = summary_dict(s.landmark);
        d["blink"] = summary_dict(s.blink);
        d["total"] = summary_dict(s.total);
        return d;
      },
      py::arg("profile"), py::arg("fps") = 30.0, py::arg("duration_s") = 15.0, py::arg("seed") = 0);
  m.def(
      "queue_stability",
      [](const pipeline::PlatformProfile& profile, double fps) {
        const auto v = pipeline::queue_stability(profile, fps);
        py::dict d;
        d["stable"] = v.stable;
        d["backlog_growth_rate"] = v.backlog_growth_rate;
        d["frame_budget_ms"] = v.frame_budget_ms;
        return d;
      },
      py::arg("profile"), py::arg("fps") = 30.0);

  // blink
  py::class_<blink::Blink>(m, "Blink")
      .def_readonly("start_frame", &blink::Blink::start_frame)
      .def_readonly("apex_frame", &blink::Blink::apex_frame)
      .def_readonly("end_frame", &blink::Blink::end_frame)
      .def_readonly("min_ear", &blink::Blink::min_ear)
      .def_readonly("baseline_ear", &blink::Blink::baseline_ear)
      .def("__repr__", [](const blink::Blink& b) {
        return "Blink(start=" + std::to_string(b.start_frame) + ", apex=" + std::to_string(b.apex_frame) +
               ", end=" + std::to_string(b.end_frame) + ")";
      });
  py::class_<blink::BlinkFeatures>(m, "BlinkFeatures")
      .def_readonly("amplitude", &blink::BlinkFeatures::amplitude)
      .def_readonly("velocity", &blink::BlinkFeatures::velocity)
      .def_readonly("duration", &blink::BlinkFeatures::duration)
      .def_readonly("frequency", &blink::BlinkFeatures::frequency);

  m.def(
      "detect_blinks",
      [](const std::vector<double>& ear, double fps, double threshold, std::size_t min_closed) {
        const auto series = to_series(ear, fps);
        return blink::detect_blinks(series, blink::DetectorConfig{threshold, min_closed, 10});
      },
      py::arg("ear"), py::arg("fps") = 30.0, py::arg("threshold") = 0.2, py::arg("min_closed") = 2);
  m.def(
      "extract_features",
      [](const std::vector<double>& ear, const std::vector<blink::Blink>& blinks, double fps) {
        return blink::extract_all(blinks, to_series(ear, fps), fps);
      },
      py::arg("ear"), py::arg("blinks"), py::arg("fps") = 30.0);

  // decision
  m.def("threshold_grid", &decision::threshold_grid);
  m.def(
      "optimize_threshold",
      [](const std::vector<double>& scores, const std::vector<int>& labels, double w_fn, double w_fp) {
        const auto grid = decision::threshold_grid();
        const auto r = decision::optimize_threshold(to_sequences(scores, labels), grid, {w_fn, w_fp});
        py::dict d;
        d["threshold"] = r.threshold;
        d["cost"] = r.cost;
        d["fpr"] = r.rates.fpr;
        d["fnr"] = r.rates.fnr;
        d["tpr"] = r.rates.tpr;
        d["tnr"] = r.rates.tnr;
        return d;
      },
      py::arg("scores"), py::arg("labels"), py::arg("w_fn") = 2.0, py::arg("w_fp") = 1.0);
  m.def(
      "sweep",
      [](const std::vector<double>& scores, const std::vector<int>& labels, double w_fn, double w_fp) {
        const auto grid = decision::threshold_grid();
        const auto curve = decision::sweep(to_sequences(scores, labels), grid, {w_fn, w_fp});
        py::list out;
        for (const auto& p : curve.points) out.append(py::make_tuple(p.threshold, p.fpr, p.fnr, p.cost));
        return out;
      },
      py::arg("scores"), py::arg("labels"), py::arg("w_fn") = 2.0, py::arg("w_fp") = 1.0);
  m.def("percent_change", &decision::percent_change, py::arg("old_value"), py::arg("new_value"));
  m.def(
      "vote",
      [](const std::vector<int>& decisions, const std::vector<std::pair<double, double>>& tpr_tnr) {
        std::vector<decision::ModelStats> stats;
        for (std::size_t i = 0; i < tpr_tnr.size(); ++i) {
          stats.push_back({static_cast<int>(i) + 1, tpr_tnr[i].first, tpr_tnr[i].second});
        }
        const auto r = decision::vote(decisions, stats);
        py::dict d;
        d["weights"] = r.weights;
        d["normalizer"] = r.normalizer;
        d["prediction"] = r.prediction;
        d["drowsy"] = r.decision == decision::Label::Drowsy;
        return d;
      },
      py::arg("decisions"), py::arg("tpr_tnr"));

  // synth
  m.def(
      "gen_ear_series",
      [](std::size_t n_blinks, std::uint64_t seed, double noise_std, double fps) {
        synth::RandomScriptOptions opts;
        opts.n_blinks = n_blinks;
        opts.noise_std = noise_std;
        opts.fps = fps;
        const auto g = synth::gen_ear_series(synth::random_script(opts, seed));
        std::vector<double> ear;
        for (const auto& s : g.samples) ear.push_back(s.ear);
        return py::make_tuple(ear, g.truth);
      },
      py::arg("n_blinks") = 3, py::arg("seed") = 0, py::arg("noise_std") = 0.0, py::arg("fps") = 30.0);
  m.def(
      "gen_scores",
      [](std::uint64_t n_alert, double alert_mean, double alert_std, std::uint64_t n_drowsy, double drowsy_mean,
         double drowsy_std, std::uint64_t seed) {
        synth::ScoreDatasetSpec spec;
        spec.n_alert = n_alert;
        spec.alert = {alert_mean, alert_std};
        spec.n_drowsy = n_drowsy;
        spec.drowsy = {drowsy_mean, drowsy_std};
        spec.seed = seed;
        std::vector<double> scores;
        std::vector<int> labels;
        for (const auto& s : synth::gen_score_dataset(spec)) {
          scores.push_back(s.score);
          labels.push_back(s.label == decision::Label::Drowsy ? 1 : 0);
        }
        return py::make_tuple(scores, labels);
      },
      py::arg("n_alert"), py::arg("alert_mean"), py::arg("alert_std"), py::arg("n_drowsy"), py::arg("drowsy_mean"),
      py::arg("drowsy_std"), py::arg("seed") = 0);
}
