#include "vigil/pipeline/clock.hpp"

#include <chrono>
#include <thread>

#include "vigil/common/monotonic.hpp"

namespace vigil::pipeline {

std::uint64_t SteadyClock::now_us() const { return monotonic_us(); }

void SteadyClock::advance_us(std::uint64_t us) { std::this_thread::sleep_for(std::chrono::microseconds(us)); }

}  // namespace vigil::pipeline
