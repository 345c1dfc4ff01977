#pragma once

#include <stdexcept>
#include <string>

namespace densemimo {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Quadrature failed to reach tolerance; carries the best partial value.
struct DivergenceError : std::runtime_error {
  double partial;
  DivergenceError(const std::string& what, double partial_value)
      : std::runtime_error(what), partial(partial_value) {}
};

// Empty realization: no base station in the window.
struct NoCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidWitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// sinr denominator is exactly zero (no interferers and sigma^2 = 0).
struct DegenerateDenominatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All trials censored at some density; no estimate possible.
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad CLI arguments or unparseable/invalid config (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unwritable output location (exit code 3).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace densemimo
