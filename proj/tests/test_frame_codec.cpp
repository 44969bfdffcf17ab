#include <doctest.h>

#include <stdexcept>

#include <random>

#include "vigil/transport/frame_codec.hpp"

using namespace vigil::transport;

namespace {

FrameMessage small_frame() {
  FrameMessage m;
  m.msg_type = MsgType::Frame;
  m.frame_id = 0;
  m.capture_ts_us = 0;
  m.width = 2;
  m.height = 1;
  m.pixel_format = PixelFormat::RGB24;
  m.payload.assign(6, 0xAA);
  return m;
}

CodecError::Kind decode_error_kind(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_frame(bytes);
  } catch (const CodecError& e) {
    return e.kind();
  }
  FAIL("expected CodecError");
  return CodecError::Kind::BadMagic;
}

}  // namespace

TEST_CASE("2x1 RGB24 frame encodes to header plus 6 payload bytes") {
  const auto m = small_frame();
  const auto bytes = encode_frame(m);
  CHECK(bytes.size() == kHeaderSize + 6);
  CHECK(bytes[0] == 'F');
  CHECK(bytes[3] == '1');
  CHECK(bytes[4] == 0x01);
  // payload_len little-endian at offset 26
  CHECK(bytes[26] == 6);
  CHECK(bytes[27] == 0);
  CHECK(decode_frame(bytes) == m);
}

TEST_CASE("wire layout is little-endian at fixed offsets") {
  FrameMessage m;
  m.frame_id = 0x0102030405060708ull;
  m.capture_ts_us = 0x1112131415161718ull;
  m.width = 0x2122;
  m.height = 0x3132;
  m.pixel_format = PixelFormat::Empty;
  const auto b = encode_frame(m);
  REQUIRE(b.size() == kHeaderSize);
  CHECK(b[5] == 0x08);
  CHECK(b[12] == 0x01);
  CHECK(b[13] == 0x18);
  CHECK(b[21] == 0x22);
  CHECK(b[22] == 0x21);
  CHECK(b[23] == 0x32);
  CHECK(b[25] == 0x01);
}

TEST_CASE("echo preserves server timestamps") {
  const auto echo = make_echo(small_frame(), 5, 7);
  const auto bytes = encode_frame(echo);
  CHECK(bytes.size() == kHeaderSize + 6 + kEchoTrailerSize);
  const auto back = decode_frame(bytes);
  CHECK(back.msg_type == MsgType::Echo);
  CHECK(back.server_recv_ts_us == 5u);
  CHECK(back.server_send_ts_us == 7u);
  CHECK(back == echo);
}

TEST_CASE("encode rejects invariant violations") {
  auto m = small_frame();
  m.payload.resize(5);
  try {
    encode_frame(m);
    FAIL("expected throw");
  } catch (const CodecError& e) {
    CHECK(e.kind() == CodecError::Kind::InconsistentPayload);
  }

  auto empty = small_frame();
  empty.pixel_format = PixelFormat::Empty;
  CHECK_THROWS_AS(encode_frame(empty), CodecError);

  auto bad_echo = make_echo(small_frame(), 9, 7);
  CHECK_THROWS_AS(encode_frame(bad_echo), CodecError);

  auto frame_with_ts = small_frame();
  frame_with_ts.server_recv_ts_us = 1;
  CHECK_THROWS_AS(encode_frame(frame_with_ts), CodecError);
}

TEST_CASE("decode distinguishes error kinds") {
  auto bytes = encode_frame(small_frame());

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  bad_magic[1] = 'X';
  bad_magic[2] = 'X';
  bad_magic[3] = 'X';
  CHECK(decode_error_kind(bad_magic) == CodecError::Kind::BadMagic);

  auto truncated = bytes;
  truncated[26] = 200;  // payload_len larger than what follows
  CHECK(decode_error_kind(truncated) == CodecError::Kind::Truncated);
  CHECK(decode_error_kind(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 10)) ==
        CodecError::Kind::Truncated);

  auto bad_type = bytes;
  bad_type[4] = 0x07;
  CHECK(decode_error_kind(bad_type) == CodecError::Kind::UnknownMsgType);

  auto bad_fmt = bytes;
  bad_fmt[25] = 0x09;
  CHECK(decode_error_kind(bad_fmt) == CodecError::Kind::UnknownPixelFormat);

  auto inconsistent = bytes;
  inconsistent[21] = 3;  // width 3 with a 6-byte payload
  CHECK(decode_error_kind(inconsistent) == CodecError::Kind::InconsistentPayload);
}

TEST_CASE("parse_header reports body size") {
  const auto echo = encode_frame(make_echo(small_frame(), 1, 2));
  const auto h = parse_header(echo);
  CHECK(h.msg_type == MsgType::Echo);
  CHECK(h.payload_len == 6);
  CHECK(h.body_size() == 6 + kEchoTrailerSize);
}

TEST_CASE("property: random messages roundtrip") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    FrameMessage m;
    m.msg_type = rng() % 2 ? MsgType::Frame : MsgType::Echo;
    m.frame_id = rng();
    m.capture_ts_us = rng();
    m.pixel_format = rng() % 3 ? PixelFormat::RGB24 : PixelFormat::Empty;
    m.width = static_cast<std::uint16_t>(rng() % 64);
    m.height = static_cast<std::uint16_t>(rng() % 64);
    m.payload.resize(expected_payload_size(m.width, m.height, m.pixel_format));
    for (auto& b : m.payload) b = static_cast<std::uint8_t>(rng());
    if (m.msg_type == MsgType::Echo) {
      const auto a = rng() >> 1;
      m.server_recv_ts_us = a;
      m.server_send_ts_us = a + rng() % 1000;
    }
    REQUIRE(decode_frame(encode_frame(m)) == m);
  }
}
