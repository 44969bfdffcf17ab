#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vigil/transport/frame_codec.hpp"
#include "vigil/transport/socket.hpp"

namespace vigil::transport {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoundTripRecord {
  std::uint64_t frame_id = 0;
  std::uint64_t client_send_ts_us = 0;
  std::uint64_t client_recv_ts_us = 0;
  std::uint64_t rtt_us = 0;
  std::optional<std::uint64_t> inter_arrival_us;  // absent for the first echo

  bool operator==(const RoundTripRecord&) const = default;
};

struct StreamConfig {
  double fps = 30.0;
  std::uint64_t n_frames = 500;
  std::uint16_t width = 1280;
  std::uint16_t height = 720;
  PixelFormat pixel_format = PixelFormat::RGB24;
  // Compare every echoed payload with the bytes that were sent.
  bool verify_payload = true;
};

// Deterministic test pattern for frame `frame_id`; the receiver regenerates
// it to check echo integrity.
std::vector<std::uint8_t> frame_pattern(std::uint64_t frame_id, std::size_t size);

// Streams `cfg.n_frames` frames to an echo server, paced on an absolute
// 1/fps timeline, and records one RoundTripRecord per echo. The sender and
// receiver run on separate threads. Throws TransportError on connection
// failure and ProtocolError on out-of-order or corrupted echoes.
std::vector<RoundTripRecord> stream_and_measure(const Endpoint& ep, const StreamConfig& cfg);

// Spins up an in-process EchoServer on 127.0.0.1 and measures against it.
std::vector<RoundTripRecord> stream_loopback(const StreamConfig& cfg);

// `frame_id,send_ts_us,recv_ts_us,rtt_us,inter_arrival_us`
std::string round_trips_to_csv(const std::vector<RoundTripRecord>& records);
std::vector<RoundTripRecord> round_trips_from_csv(const std::string& text);

// Bits per second needed to ship raw frames: width * height * bpp * fps.
std::uint64_t raw_bandwidth(std::uint64_t width, std::uint64_t height, std::uint64_t bits_per_pixel,
                            std::uint64_t fps);

}  // namespace vigil::transport
