#include "vigil/transport/frame_codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace vigil::transport {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'F', 'R', 'M', '1'};

class Writer {
 public:
  explicit Writer(std::size_t reserve) { buf_.reserve(reserve); }

  template <typename T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
    }
  }
  void put_bytes(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::span<const std::uint8_t> get_bytes(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw CodecError(CodecError::Kind::Truncated,
                       "truncated frame message: need " + std::to_string(n) + " bytes at offset " +
                           std::to_string(pos_) + ", have " + std::to_string(bytes_.size() - pos_));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

MsgType to_msg_type(std::uint8_t raw) {
  switch (raw) {
    case 0x01: return MsgType::Frame;
    case 0x02: return MsgType::Echo;
    default:
      throw CodecError(CodecError::Kind::UnknownMsgType, "unknown msg_type 0x" + std::to_string(raw));
  }
}

PixelFormat to_pixel_format(std::uint8_t raw) {
  switch (raw) {
    case 0x00: return PixelFormat::RGB24;
    case 0x01: return PixelFormat::Empty;
    default:
      throw CodecError(CodecError::Kind::UnknownPixelFormat, "unknown pixel_format " + std::to_string(raw));
  }
}

}  // namespace

std::size_t expected_payload_size(std::uint16_t width, std::uint16_t height, PixelFormat fmt) {
  return fmt == PixelFormat::RGB24 ? std::size_t{width} * height * 3 : 0;
}

void validate(const FrameMessage& msg) {
  const std::size_t expected = expected_payload_size(msg.width, msg.height, msg.pixel_format);
  if (msg.payload.size() != expected) {
    throw CodecError(CodecError::Kind::InconsistentPayload,
                     "payload is " + std::to_string(msg.payload.size()) + " bytes, " +
                         std::to_string(msg.width) + "x" + std::to_string(msg.height) +
                         (msg.pixel_format == PixelFormat::RGB24 ? " RGB24" : " Empty") + " requires " +
                         std::to_string(expected));
  }
  const bool has_server_ts = msg.server_recv_ts_us.has_value() || msg.server_send_ts_us.has_value();
  if (msg.msg_type == MsgType::Frame && has_server_ts) {
    throw CodecError(CodecError::Kind::InvalidTimestamps, "Frame message must not carry server timestamps");
  }
  if (msg.msg_type == MsgType::Echo) {
    if (!msg.server_recv_ts_us || !msg.server_send_ts_us) {
      throw CodecError(CodecError::Kind::InvalidTimestamps, "Echo message requires both server timestamps");
    }
    if (*msg.server_recv_ts_us > *msg.server_send_ts_us) {
      throw CodecError(CodecError::Kind::InvalidTimestamps, "Echo server_recv_ts_us > server_send_ts_us");
    }
  }
}

FrameHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kMagic.size() && !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw CodecError(CodecError::Kind::BadMagic, "bad magic, expected \"FRM1\"");
  }
  Reader r(bytes);
  r.get_bytes(kMagic.size());
  const MsgType type = to_msg_type(r.get<std::uint8_t>());
  r.get<std::uint64_t>();
  r.get<std::uint64_t>();
  r.get<std::uint16_t>();
  r.get<std::uint16_t>();
  to_pixel_format(r.get<std::uint8_t>());
  const auto payload_len = r.get<std::uint32_t>();
  return FrameHeader{type, payload_len};
}

std::vector<std::uint8_t> encode_frame(const FrameMessage& msg) {
  validate(msg);
  Writer w(kHeaderSize + msg.payload.size() + kEchoTrailerSize);
  w.put_bytes(kMagic);
  w.put(static_cast<std::uint8_t>(msg.msg_type));
  w.put(msg.frame_id);
  w.put(msg.capture_ts_us);
  w.put(msg.width);
  w.put(msg.height);
  w.put(static_cast<std::uint8_t>(msg.pixel_format));
  w.put(static_cast<std::uint32_t>(msg.payload.size()));
  w.put_bytes(msg.payload);
  if (msg.msg_type == MsgType::Echo) {
    w.put(*msg.server_recv_ts_us);
    w.put(*msg.server_send_ts_us);
  }
  return w.take();
}

FrameMessage decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kMagic.size() && !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw CodecError(CodecError::Kind::BadMagic, "bad magic, expected \"FRM1\"");
  }
  Reader r(bytes);
  r.get_bytes(kMagic.size());
  FrameMessage msg;
  msg.msg_type = to_msg_type(r.get<std::uint8_t>());
  msg.frame_id = r.get<std::uint64_t>();
  msg.capture_ts_us = r.get<std::uint64_t>();
  msg.width = r.get<std::uint16_t>();
  msg.height = r.get<std::uint16_t>();
  msg.pixel_format = to_pixel_format(r.get<std::uint8_t>());
  const auto payload_len = r.get<std::uint32_t>();
  auto payload = r.get_bytes(payload_len);
  msg.payload.assign(payload.begin(), payload.end());
  if (msg.msg_type == MsgType::Echo) {
    msg.server_recv_ts_us = r.get<std::uint64_t>();
    msg.server_send_ts_us = r.get<std::uint64_t>();
  }
  validate(msg);
  return msg;
}

FrameMessage make_echo(const FrameMessage& frame, std::uint64_t server_recv_ts_us,
                       std::uint64_t server_send_ts_us) {
  FrameMessage echo = frame;
  echo.msg_type = MsgType::Echo;
  echo.server_recv_ts_us = server_recv_ts_us;
  echo.server_send_ts_us = server_send_ts_us;
  return echo;
}

}  // namespace vigil::transport
