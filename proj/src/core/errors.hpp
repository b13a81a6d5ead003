#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aucgibbs {

/// Truncation interval too narrow to hold any representable value strictly
/// inside. In the rank-likelihood sampler this signals a numerically stuck
/// chain; the coordinate that failed is reported when known.
class DegenerateIntervalError : public std::runtime_error {
public:
    explicit DegenerateIntervalError(const std::string& what,
                                     std::ptrdiff_t coordinate = -1)
        : std::runtime_error(what), coordinate_(coordinate) {}

    /// Index of the offending latent coordinate, or -1 when not applicable.
    std::ptrdiff_t coordinate() const noexcept { return coordinate_; }

private:
    std::ptrdiff_t coordinate_;
};

/// The plug-in variance estimate tau10/lambda + tau01/(1-lambda) came out
/// nonpositive, so no analytic learning rate exists for this sample.
/// Callers may fall back to bootstrap calibration.
class NonpositiveVarianceError : public std::runtime_error {
public:
    NonpositiveVarianceError()
        : std::runtime_error("variance estimate nonpositive") {}
};

/// Tied values where strict ordering is required (rank construction).
class TiesError : public std::invalid_argument {
public:
    TiesError() : std::invalid_argument("ranks: ties detected; scores must be distinct") {}
};

/// File open/write failure; the message names the path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aucgibbs
