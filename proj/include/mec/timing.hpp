#pragma once

#include <chrono>
#include <optional>

namespace mec {

class Stopwatch {
 public:
  using Clock = std::chrono::steady_clock;

  Stopwatch() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

/// Wall-clock budget polled from hot loops. Reading the clock is cheap but
/// not free, so expired() only looks every `stride` calls.
class Deadline {
 public:
  explicit Deadline(std::optional<double> budget_s, unsigned stride = 1024)
      : stride_(stride) {
    if (budget_s) {
      end_ = Stopwatch::Clock::now() +
             std::chrono::duration_cast<Stopwatch::Clock::duration>(
                 std::chrono::duration<double>(*budget_s));
    }
  }

  bool expired() {
    if (hit_) return true;
    if (!end_) return false;
    if (++calls_ % stride_ != 0) return false;
    hit_ = Stopwatch::Clock::now() >= *end_;
    return hit_;
  }

  bool hit() const { return hit_; }

 private:
  std::optional<Stopwatch::Clock::time_point> end_;
  unsigned stride_;
  unsigned calls_ = 0;
  bool hit_ = false;
};

}  // namespace mec
