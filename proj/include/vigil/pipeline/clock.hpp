#pragma once

#include <cstdint>

namespace vigil::pipeline {

// Time source for stage execution. Synthetic stages "spend" their service
// time through advance(): a virtual clock jumps forward, a wall clock sleeps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::uint64_t now_us() const = 0;
  virtual void advance_us(std::uint64_t us) = 0;
};

class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(std::uint64_t start_us = 0) : now_(start_us) {}
  std::uint64_t now_us() const override { return now_; }
  void advance_us(std::uint64_t us) override { now_ += us; }
  void set_us(std::uint64_t t) { now_ = t; }

 private:
  std::uint64_t now_;
};

class SteadyClock final : public Clock {
 public:
  std::uint64_t now_us() const override;
  void advance_us(std::uint64_t us) override;
};

}  // namespace vigil::pipeline
