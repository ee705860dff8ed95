#pragma once

#include <stdexcept>
#include <string>

namespace nbtrade {

// Raised when a queueing stage is driven at utilization >= 1.  The message
// names the queue and carries the computed utilization so the CLI can report
// which knob to turn down.
class UnstableQueueError : public std::runtime_error {
public:
    UnstableQueueError(const std::string& queue, double utilization);

    double utilization() const { return utilization_; }
    const std::string& queue() const { return queue_; }

private:
    std::string queue_;
    double utilization_;
};

// Raised when an iterative numeric routine (quadrature, fixed-point solver)
// fails to reach its tolerance within the iteration budget.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed or out-of-range configuration input.  The message lists
// every offending field path, one per line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nbtrade
