#include <doctest.h>

#include <stdexcept>

#include <sys/socket.h>

#include <algorithm>
#include <numeric>
#include <thread>

#include "vigil/common/monotonic.hpp"
#include "vigil/transport/echo_server.hpp"
#include "vigil/transport/interval_stats.hpp"
#include "vigil/transport/stream_client.hpp"

using namespace vigil::transport;

namespace {

std::vector<RoundTripRecord> records_at(std::initializer_list<std::uint64_t> arrivals) {
  std::vector<RoundTripRecord> out;
  std::uint64_t id = 0;
  for (auto t : arrivals) {
    RoundTripRecord r;
    r.frame_id = id++;
    r.client_send_ts_us = t;
    r.client_recv_ts_us = t;
    if (!out.empty()) r.inter_arrival_us = t - out.back().client_recv_ts_us;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("interval_stats examples") {
  SUBCASE("uniform spacing") {
    const auto s = interval_stats(records_at({0, 33333, 66666, 99999}));
    CHECK(s.count == 3);
    CHECK(s.mean_us == doctest::Approx(33333));
    CHECK(s.std_us == doctest::Approx(0));
  }
  SUBCASE("uneven spacing, population std") {
    const auto s = interval_stats(records_at({0, 30000, 70000}));
    CHECK(s.mean_us == doctest::Approx(35000));
    CHECK(s.std_us == doctest::Approx(5000));
    CHECK(s.min_us <= s.median_us);
    CHECK(s.median_us <= s.max_us);
  }
  SUBCASE("single interval") {
    const auto s = interval_stats(records_at({100, 41100}));
    CHECK(s.count == 1);
    CHECK(s.mean_us == doctest::Approx(41000));
    CHECK(s.std_us == 0.0);
  }
  CHECK_THROWS_AS(interval_stats(records_at({5})), std::invalid_argument);
}

TEST_CASE("raw_bandwidth is the exact product") {
  CHECK(raw_bandwidth(1280, 720, 24, 30) == 663552000ull);
  CHECK(raw_bandwidth(320, 240, 24, 30) == 55296000ull);
  CHECK(raw_bandwidth(1, 1, 1, 1) == 1ull);
  CHECK_THROWS_AS(raw_bandwidth(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("endpoint parsing") {
  const auto ep = Endpoint::parse("127.0.0.1:9000");
  CHECK(ep.host == "127.0.0.1");
  CHECK(ep.port == 9000);
  CHECK(Endpoint::parse("[::1]:80").host == "::1");
  CHECK_THROWS_AS(Endpoint::parse("localhost"), std::invalid_argument);
  CHECK_THROWS_AS(Endpoint::parse("localhost:99999"), std::invalid_argument);
  CHECK_THROWS_AS(Endpoint::parse("localhost:"), std::invalid_argument);
}

TEST_CASE("loopback stream with two frames yields one interval") {
  StreamConfig cfg;
  cfg.fps = 30;
  cfg.n_frames = 2;
  cfg.width = 32;
  cfg.height = 24;
  const auto recs = stream_loopback(cfg);
  REQUIRE(recs.size() == 2);
  CHECK_FALSE(recs[0].inter_arrival_us.has_value());
  CHECK(recs[1].inter_arrival_us.has_value());
  CHECK(interval_stats(recs).count == 1);
}

TEST_CASE("loopback stream: pacing, telescoping and ordering") {
  StreamConfig cfg;
  cfg.fps = 100;
  cfg.n_frames = 60;
  cfg.width = 160;
  cfg.height = 120;
  const auto recs = stream_loopback(cfg);
  REQUIRE(recs.size() == cfg.n_frames);

  std::uint64_t gap_sum = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].frame_id == i);
    CHECK(recs[i].client_recv_ts_us >= recs[i].client_send_ts_us);
    CHECK(recs[i].rtt_us == recs[i].client_recv_ts_us - recs[i].client_send_ts_us);
    if (i > 0) gap_sum += *recs[i].inter_arrival_us;
  }
  CHECK(gap_sum == recs.back().client_recv_ts_us - recs.front().client_recv_ts_us);

  const auto stats = interval_stats(recs);
  CHECK(stats.mean_us * static_cast<double>(stats.count) ==
        doctest::Approx(static_cast<double>(gap_sum)).epsilon(1e-12));

  // Send times follow the ideal 10 ms timeline; error does not grow with k.
  const auto t0 = recs.front().client_send_ts_us;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const double ideal = static_cast<double>(t0) + 10000.0 * static_cast<double>(k);
    CHECK(std::abs(static_cast<double>(recs[k].client_send_ts_us) - ideal) < 8000.0);
  }
  CHECK(stats.median_us == doctest::Approx(10000).epsilon(0.2));
}

TEST_CASE("echo server preserves payload and stamps server times") {
  EchoServer server(Endpoint{"127.0.0.1", 0});
  server.start();
  Socket s = connect_tcp(Endpoint{"127.0.0.1", server.port()});

  FrameMessage m;
  m.frame_id = 77;
  m.capture_ts_us = 123;
  m.width = 4;
  m.height = 3;
  m.pixel_format = PixelFormat::RGB24;
  m.payload = frame_pattern(77, 36);
  s.write_all(encode_frame(m));

  std::vector<std::uint8_t> buf;
  REQUIRE(read_message(s, buf));
  const auto echo = decode_frame(buf);
  CHECK(echo.msg_type == MsgType::Echo);
  CHECK(echo.frame_id == 77);
  CHECK(echo.capture_ts_us == 123);
  CHECK(echo.payload == m.payload);
  REQUIRE(echo.server_recv_ts_us.has_value());
  CHECK(*echo.server_recv_ts_us <= *echo.server_send_ts_us);
  server.stop();
  CHECK(server.frames_echoed() == 1);
}

TEST_CASE("echo server serves concurrent connections in per-connection order") {
  EchoServer server(Endpoint{"127.0.0.1", 0});
  server.start();
  const Endpoint ep{"127.0.0.1", server.port()};
  StreamConfig cfg;
  cfg.fps = 200;
  cfg.n_frames = 40;
  cfg.width = 64;
  cfg.height = 48;
  std::vector<std::vector<RoundTripRecord>> results(3);
  std::vector<std::thread> clients;
  for (int c = 0; c < 3; ++c) clients.emplace_back([&, c] { results[c] = stream_and_measure(ep, cfg); });
  for (auto& t : clients) t.join();
  for (const auto& r : results) CHECK(r.size() == cfg.n_frames);
  server.stop();
}

TEST_CASE("malformed message closes the connection") {
  EchoServer server(Endpoint{"127.0.0.1", 0});
  server.start();
  Socket s = connect_tcp(Endpoint{"127.0.0.1", server.port()});
  std::vector<std::uint8_t> junk(kHeaderSize, 0x55);
  s.write_all(junk);
  std::vector<std::uint8_t> buf;
  bool closed = false;
  try {
    closed = !read_message(s, buf);
  } catch (const TransportError&) {
    closed = true;
  }
  CHECK(closed);
  server.stop();
}

TEST_CASE("bind failure and refused connection raise TransportError") {
  EchoServer first(Endpoint{"127.0.0.1", 0});
  CHECK_THROWS_AS(EchoServer(Endpoint{"127.0.0.1", first.port()}), TransportError);
  CHECK_THROWS_AS(EchoServer(Endpoint{"256.1.1.1", 0}), TransportError);

  const auto port = first.port();
  first.stop();
  StreamConfig cfg;
  cfg.n_frames = 2;
  CHECK_THROWS_AS(stream_and_measure(Endpoint{"127.0.0.1", port}, cfg), TransportError);
}

TEST_CASE("echo with wrong frame_id is a protocol error") {
  Socket listener = listen_tcp(Endpoint{"127.0.0.1", 0});
  const auto port = local_port(listener);
  std::thread rogue([&] {
    Socket conn(::accept(listener.fd(), nullptr, nullptr));
    std::vector<std::uint8_t> buf;
    try {
      while (read_message(conn, buf)) {
        auto msg = decode_frame(buf);
        msg.frame_id += 1;
        conn.write_all(encode_frame(make_echo(msg, 1, 2)));
      }
    } catch (const std::exception&) {
    }
  });
  StreamConfig cfg;
  cfg.fps = 100;
  cfg.n_frames = 3;
  cfg.width = 8;
  cfg.height = 8;
  CHECK_THROWS_AS(stream_and_measure(Endpoint{"127.0.0.1", port}, cfg), ProtocolError);
  rogue.join();
}

TEST_CASE("corrupted echo payload is a protocol error") {
  Socket listener = listen_tcp(Endpoint{"127.0.0.1", 0});
  const auto port = local_port(listener);
  std::thread rogue([&] {
    Socket conn(::accept(listener.fd(), nullptr, nullptr));
    std::vector<std::uint8_t> buf;
    try {
      while (read_message(conn, buf)) {
        auto msg = decode_frame(buf);
        msg.payload[0] ^= 0xFF;
        conn.write_all(encode_frame(make_echo(msg, 1, 2)));
      }
    } catch (const std::exception&) {
    }
  });
  StreamConfig cfg;
  cfg.fps = 100;
  cfg.n_frames = 3;
  cfg.width = 8;
  cfg.height = 8;
  CHECK_THROWS_AS(stream_and_measure(Endpoint{"127.0.0.1", port}, cfg), ProtocolError);
  rogue.join();
}

TEST_CASE("round-trip CSV export") {
  const auto recs = records_at({10, 40, 100});
  const auto text = round_trips_to_csv(recs);
  CHECK(text.rfind("frame_id,send_ts_us,recv_ts_us,rtt_us,inter_arrival_us\n0,10,10,0,\n", 0) == 0);
  CHECK(round_trips_from_csv(text) == recs);
}

TEST_CASE("stream preconditions") {
  StreamConfig cfg;
  cfg.n_frames = 1;
  CHECK_THROWS_AS(stream_and_measure(Endpoint{"127.0.0.1", 1}, cfg), std::invalid_argument);
  cfg.n_frames = 5;
  cfg.fps = 0;
  CHECK_THROWS_AS(stream_and_measure(Endpoint{"127.0.0.1", 1}, cfg), std::invalid_argument);
}
