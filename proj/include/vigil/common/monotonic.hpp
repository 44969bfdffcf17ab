#pragma once

#include <chrono>
#include <cstdint>

namespace vigil {

inline std::uint64_t monotonic_us() {
  using namespace std::chrono;
  return static_cast<std::uint64_t>(duration_cast<microseconds>(steady_clock::now().time_since_epoch()).count());
}

}  // namespace vigil
