#pragma once

#include <stdexcept>
#include <string>

namespace lfr {

// An alternating Mittag-Leffler sum would lose all significant digits, or a
// series failed to settle within the term cap. Failing loudly beats
// returning noise.
class PrecisionLossError : public std::runtime_error {
public:
    explicit PrecisionLossError(const std::string& msg) : std::runtime_error(msg) {}
};

// A truncated series was evaluated at a point where its remainder estimate
// exceeds the requested tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by a series whose constant term vanishes, or evaluation at a
// point where the auxiliary function psi is zero.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lfr
