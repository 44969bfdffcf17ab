#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vigil::transport {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  // Parses "host:port"; throws std::invalid_argument on malformed input.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

// Owning wrapper around a connected or listening TCP socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) noexcept : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  ~Socket();

  int fd() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }

  void write_all(std::span<const std::uint8_t> bytes);
  // Returns false on orderly EOF before the first byte; throws on EOF mid-buffer.
  bool read_exact(std::span<std::uint8_t> out);

  // Unblocks any thread waiting in read/write on this socket.
  void shutdown() noexcept;
  void close() noexcept;

 private:
  int fd_ = -1;
};

Socket connect_tcp(const Endpoint& ep);
Socket listen_tcp(const Endpoint& ep, int backlog = 16);
std::uint16_t local_port(const Socket& s);

// Reads one complete frame message (header, payload and echo trailer) into
// `buf`. Returns false if the peer closed the connection cleanly between
// messages.
bool read_message(Socket& s, std::vector<std::uint8_t>& buf);

}  // namespace vigil::transport
