#pragma once

#include <chrono>
#include <optional>

namespace resconj {

// Wall-clock budget shared by long-running computations. A default Deadline
// never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline never() { return Deadline(); }
  static Deadline after(double seconds) {
    Deadline d;
    d.end_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return end_ && Clock::now() >= *end_; }
  bool bounded() const { return end_.has_value(); }
  // Seconds left, or a negative value when unbounded.
  double remaining() const {
    if (!end_) return -1.0;
    return std::chrono::duration<double>(*end_ - Clock::now()).count();
  }

 private:
  std::optional<Clock::time_point> end_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace resconj
