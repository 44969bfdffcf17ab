#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <thread>

#include "vigil/transport/socket.hpp"

namespace vigil::transport {

// Replies to every Frame with an Echo carrying the same frame_id,
// capture_ts_us and payload, stamped with the server's monotonic receive
// and send times. Each connection is served on its own thread; replies on a
// connection keep arrival order.
class EchoServer {
 public:
  // Binds and listens immediately; throws TransportError if the endpoint
  // cannot be bound. Port 0 picks an ephemeral port.
  explicit EchoServer(const Endpoint& listen);
  EchoServer(const EchoServer&) = delete;
  EchoServer& operator=(const EchoServer&) = delete;
  ~EchoServer();

  std::uint16_t port() const noexcept { return port_; }

  // Accept loop; blocks until stop() is called.
  void serve();
  // Runs serve() on a background thread.
  void start();
  // Idempotent; closes all connections and joins their threads.
  void stop();

  std::uint64_t frames_echoed() const noexcept { return frames_echoed_.load(); }

 private:
  struct Connection {
    Socket socket;
    std::thread worker;
    std::atomic<bool> done{false};
  };

  void reap_finished();

  void handle(Connection& conn);

  Socket listener_;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::atomic<std::uint64_t> frames_echoed_{0};
  std::mutex mu_;
  std::list<Connection> connections_;
  std::thread accept_thread_;
};

// Serves on `listen` until `stop_flag` becomes true (checked every ~100 ms).
void run_echo_server(const Endpoint& listen, const std::atomic<bool>& stop_flag);

}  // namespace vigil::transport
