#pragma once

#include <chrono>
#include <exception>

namespace pcenter {

/// Thrown at a cooperative checkpoint once the wall-clock budget is spent.
class TimeLimitReached : public std::exception {
public:
    const char* what() const noexcept override { return "time limit reached"; }
};

class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    /// No limit.
    Deadline() = default;
    explicit Deadline(double seconds)
        : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))),
          limited_(true) {}

    bool expired() const { return limited_ && Clock::now() >= end_; }
    void check() const {
        if (expired()) throw TimeLimitReached();
    }

private:
    Clock::time_point end_{};
    bool limited_ = false;
};

}  // namespace pcenter
