#include "vigil/transport/echo_server.hpp"

#include <poll.h>
#include <sys/socket.h>

#include <chrono>
#include <iostream>
#include <vector>

#include "vigil/common/monotonic.hpp"
#include "vigil/transport/frame_codec.hpp"

namespace vigil::transport {

namespace {

void put_u64_le(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

EchoServer::EchoServer(const Endpoint& listen) : listener_(listen_tcp(listen)), port_(local_port(listener_)) {}

EchoServer::~EchoServer() { stop(); }

void EchoServer::start() { accept_thread_ = std::thread([this] { serve(); }); }

void EchoServer::serve() {
  while (!stopping_.load()) {
    pollfd pfd{listener_.fd(), POLLIN, 0};
    const int rc = ::poll(&pfd, 1, 100);
    if (rc <= 0 || !(pfd.revents & POLLIN)) continue;
    Socket client(::accept(listener_.fd(), nullptr, nullptr));
    if (!client.valid()) continue;

    std::lock_guard lock(mu_);
    if (stopping_.load()) break;
    reap_finished();
    auto& conn = connections_.emplace_back();
    conn.socket = std::move(client);
    conn.worker = std::thread([this, &conn] { handle(conn); });
  }
}

void EchoServer::handle(Connection& conn) {
  std::vector<std::uint8_t> buf;
  try {
    while (read_message(conn.socket, buf)) {
      const std::uint64_t recv_ts = monotonic_us();
      const FrameMessage msg = decode_frame(buf);
      if (msg.msg_type != MsgType::Frame) {
        throw CodecError(CodecError::Kind::UnknownMsgType, "client sent a non-Frame message");
      }
      // Reuse the received bytes: flip msg_type and append the trailer.
      buf[4] = static_cast<std::uint8_t>(MsgType::Echo);
      put_u64_le(buf, recv_ts);
      put_u64_le(buf, std::max(recv_ts, monotonic_us()));
      conn.socket.write_all(buf);
      frames_echoed_.fetch_add(1);
    }
  } catch (const std::exception& e) {
    if (!stopping_.load()) std::cerr << "echo-server: closing connection: " << e.what() << '\n';
  }
  conn.socket.shutdown();
  conn.done.store(true);
}

void EchoServer::reap_finished() {
  for (auto it = connections_.begin(); it != connections_.end();) {
    if (it->done.load()) {
      it->worker.join();
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void EchoServer::stop() {
  if (stopping_.exchange(true)) {
    if (accept_thread_.joinable()) accept_thread_.join();
    return;
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  std::lock_guard lock(mu_);
  for (auto& conn : connections_) conn.socket.shutdown();
  for (auto& conn : connections_) {
    if (conn.worker.joinable()) conn.worker.join();
  }
  connections_.clear();
  listener_.close();
}

void run_echo_server(const Endpoint& listen, const std::atomic<bool>& stop_flag) {
  EchoServer server(listen);
  server.start();
  while (!stop_flag.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
}

}  // namespace vigil::transport
