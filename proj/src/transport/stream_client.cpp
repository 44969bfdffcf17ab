#include "vigil/transport/stream_client.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"
#include "vigil/common/monotonic.hpp"
#include "vigil/transport/echo_server.hpp"

namespace vigil::transport {

namespace {

void fill_pattern(std::uint64_t frame_id, std::span<std::uint8_t> out) {
  std::uint32_t state = static_cast<std::uint32_t>(frame_id * 2654435761u) ^ 0x9e3779b9u;
  for (auto& b : out) {
    state = state * 1664525u + 1013904223u;
    b = static_cast<std::uint8_t>(state >> 24);
  }
}

}  // namespace

std::vector<std::uint8_t> frame_pattern(std::uint64_t frame_id, std::size_t size) {
  std::vector<std::uint8_t> out(size);
  fill_pattern(frame_id, out);
  return out;
}

std::vector<RoundTripRecord> stream_and_measure(const Endpoint& ep, const StreamConfig& cfg) {
  if (!(cfg.fps > 0.0)) throw std::invalid_argument("fps must be positive");
  if (cfg.n_frames < 2) throw std::invalid_argument("n_frames must be at least 2");
  const std::size_t payload_size = expected_payload_size(cfg.width, cfg.height, cfg.pixel_format);

  Socket sock = connect_tcp(ep);

  // Whichever side fails first shuts the socket down, which makes the other
  // side fail too; only the first error is reported.
  enum : int { kNone, kSender, kReceiver };
  std::atomic<int> first_failure{kNone};
  std::exception_ptr send_error;
  std::thread sender([&] {
    try {
      using clock = std::chrono::steady_clock;
      const auto t0 = clock::now();
      const double period_ns = 1e9 / cfg.fps;
      FrameMessage msg;
      msg.msg_type = MsgType::Frame;
      msg.width = cfg.width;
      msg.height = cfg.height;
      msg.pixel_format = cfg.pixel_format;
      msg.payload.resize(payload_size);
      for (std::uint64_t k = 0; k < cfg.n_frames; ++k) {
        fill_pattern(k, msg.payload);
        // Deadlines come from the ideal timeline so pacing error never accumulates.
        const auto deadline =
            t0 + std::chrono::nanoseconds(static_cast<std::int64_t>(static_cast<double>(k) * period_ns));
        std::this_thread::sleep_until(deadline);
        msg.frame_id = k;
        msg.capture_ts_us = monotonic_us();
        sock.write_all(encode_frame(msg));
      }
    } catch (...) {
      send_error = std::current_exception();
      int expected = kNone;
      first_failure.compare_exchange_strong(expected, kSender);
      sock.shutdown();
    }
  });

  std::vector<RoundTripRecord> records;
  records.reserve(cfg.n_frames);
  std::exception_ptr recv_error;
  try {
    std::vector<std::uint8_t> buf;
    std::vector<std::uint8_t> expected(payload_size);
    for (std::uint64_t k = 0; k < cfg.n_frames; ++k) {
      if (!read_message(sock, buf)) throw TransportError("server closed the connection");
      const std::uint64_t recv_ts = monotonic_us();
      const FrameMessage echo = decode_frame(buf);
      if (echo.msg_type != MsgType::Echo) throw ProtocolError("expected Echo message");
      if (echo.frame_id != k) {
        throw ProtocolError("echo frame_id mismatch: expected " + std::to_string(k) + ", got " +
                            std::to_string(echo.frame_id));
      }
      if (cfg.verify_payload) {
        fill_pattern(k, expected);
        if (echo.payload != expected) throw ProtocolError("echo payload differs for frame " + std::to_string(k));
      }
      RoundTripRecord rec;
      rec.frame_id = k;
      rec.client_send_ts_us = echo.capture_ts_us;
      rec.client_recv_ts_us = recv_ts;
      rec.rtt_us = recv_ts >= echo.capture_ts_us ? recv_ts - echo.capture_ts_us : 0;
      if (!records.empty()) rec.inter_arrival_us = recv_ts - records.back().client_recv_ts_us;
      records.push_back(rec);
    }
  } catch (...) {
    recv_error = std::current_exception();
    int expected = kNone;
    first_failure.compare_exchange_strong(expected, kReceiver);
    sock.shutdown();
  }
  sender.join();
  if (first_failure.load() == kReceiver) std::rethrow_exception(recv_error);
  if (send_error) std::rethrow_exception(send_error);
  if (recv_error) std::rethrow_exception(recv_error);
  return records;
}

std::vector<RoundTripRecord> stream_loopback(const StreamConfig& cfg) {
  EchoServer server(Endpoint{"127.0.0.1", 0});
  server.start();
  Endpoint ep{"127.0.0.1", server.port()};
  auto records = stream_and_measure(ep, cfg);
  server.stop();
  return records;
}

std::string round_trips_to_csv(const std::vector<RoundTripRecord>& records) {
  std::ostringstream os;
  os << "frame_id,send_ts_us,recv_ts_us,rtt_us,inter_arrival_us\n";
  for (const auto& r : records) {
    os << r.frame_id << ',' << r.client_send_ts_us << ',' << r.client_recv_ts_us << ',' << r.rtt_us << ',';
    if (r.inter_arrival_us) os << *r.inter_arrival_us;
    os << '\n';
  }
  return os.str();
}

std::vector<RoundTripRecord> round_trips_from_csv(const std::string& text) {
  const csv::Table t = csv::parse(text);
  const auto c_id = t.column("frame_id");
  const auto c_send = t.column("send_ts_us");
  const auto c_recv = t.column("recv_ts_us");
  const auto c_rtt = t.column("rtt_us");
  const auto c_gap = t.column("inter_arrival_us");
  std::vector<RoundTripRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    RoundTripRecord r;
    r.frame_id = csv::to_uint(row[c_id]);
    r.client_send_ts_us = csv::to_uint(row[c_send]);
    r.client_recv_ts_us = csv::to_uint(row[c_recv]);
    r.rtt_us = csv::to_uint(row[c_rtt]);
    if (!row[c_gap].empty()) r.inter_arrival_us = csv::to_uint(row[c_gap]);
    if (!out.empty() && r.frame_id <= out.back().frame_id) {
      throw FormatError("round-trip CSV frame_id must be strictly increasing");
    }
    out.push_back(r);
  }
  return out;
}

std::uint64_t raw_bandwidth(std::uint64_t width, std::uint64_t height, std::uint64_t bits_per_pixel,
                            std::uint64_t fps) {
  if (width == 0 || height == 0 || bits_per_pixel == 0 || fps == 0) {
    throw std::invalid_argument("raw_bandwidth inputs must be positive");
  }
  return width * height * bits_per_pixel * fps;
}

}  // namespace vigil::transport
