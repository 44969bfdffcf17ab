#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vigil::transport {

enum class MsgType : std::uint8_t { Frame = 0x01, Echo = 0x02 };
enum class PixelFormat : std::uint8_t { RGB24 = 0x00, Empty = 0x01 };

// One video frame (or its echo) on the wire. Timestamps are microseconds on
// the sender's monotonic clock; the server timestamps are present only on
// Echo messages.
struct FrameMessage {
  MsgType msg_type = MsgType::Frame;
  std::uint64_t frame_id = 0;
  std::uint64_t capture_ts_us = 0;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  PixelFormat pixel_format = PixelFormat::Empty;
  std::vector<std::uint8_t> payload;
  std::optional<std::uint64_t> server_recv_ts_us;
  std::optional<std::uint64_t> server_send_ts_us;

  bool operator==(const FrameMessage&) const = default;
};

class CodecError : public std::runtime_error {
 public:
  enum class Kind {
    BadMagic,
    Truncated,
    UnknownMsgType,
    UnknownPixelFormat,
    InconsistentPayload,
    InvalidTimestamps,
  };

  CodecError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Layout, little-endian:
//   "FRM1" | msg_type u8 | frame_id u64 | capture_ts_us u64 | width u16 |
//   height u16 | pixel_format u8 | payload_len u32 | payload |
//   [server_recv_ts_us u64 | server_send_ts_us u64]   (Echo only)
inline constexpr std::size_t kHeaderSize = 30;
inline constexpr std::size_t kEchoTrailerSize = 16;

struct FrameHeader {
  MsgType msg_type;
  std::uint32_t payload_len;

  // Bytes that follow the fixed header: payload plus the echo trailer.
  std::size_t body_size() const noexcept {
    return payload_len + (msg_type == MsgType::Echo ? kEchoTrailerSize : 0);
  }
};

// Validates the fixed header and reports how many body bytes follow it.
// `bytes` must hold at least kHeaderSize bytes.
FrameHeader parse_header(std::span<const std::uint8_t> bytes);

// Throws CodecError(InconsistentPayload / InvalidTimestamps) if `msg`
// violates the message invariants.
void validate(const FrameMessage& msg);

std::vector<std::uint8_t> encode_frame(const FrameMessage& msg);
FrameMessage decode_frame(std::span<const std::uint8_t> bytes);

// Builds the Echo reply for a received Frame.
FrameMessage make_echo(const FrameMessage& frame, std::uint64_t server_recv_ts_us,
                       std::uint64_t server_send_ts_us);

std::size_t expected_payload_size(std::uint16_t width, std::uint16_t height, PixelFormat fmt);

}  // namespace vigil::transport
