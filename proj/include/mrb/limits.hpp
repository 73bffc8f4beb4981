#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "mrb/error.hpp"

namespace mrb {

/// Cooperative time limit for the exponential solvers. poll() is cheap and
/// only reads the clock every few thousand calls.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}

  static Deadline none() { return {}; }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  // Throws Timeout once the budget is spent.
  void poll() {
    if (!at_) return;
    if ((++calls_ & 0xfff) != 0) return;
    if (Clock::now() >= *at_) throw Timeout();
  }

 private:
  std::optional<Clock::time_point> at_;
  std::uint64_t calls_ = 0;
};

}  // namespace mrb
