#pragma once

#include <stdexcept>
#include <string>

namespace phaselift {

/// Raised for malformed arguments: non-finite entries, out-of-range
/// parameters, wrong field or model tags.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// Raised when an iterative routine fails numerically (divergence,
/// non-convergence of a power iteration).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Power iteration ran out of iterations. Carries the last bound so
/// callers can still decide to use it.
class LipschitzNotConverged : public NumericalError {
  public:
    LipschitzNotConverged(const std::string &what, double last_bound)
        : NumericalError(what), last_bound_(last_bound) {}
    double last_bound() const noexcept { return last_bound_; }

  private:
    double last_bound_;
};

} // namespace phaselift
