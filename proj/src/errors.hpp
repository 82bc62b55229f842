#pragma once

#include <stdexcept>
#include <string>

namespace latband {

// Bad argument values: NaN momentum, non-positive coupling, unsupported
// dimension, and the like.
class InvalidArgument : public std::invalid_argument {
public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically out of range for the requested quantity, e.g. asking for the
// edge value of the resolvent integral when it diverges.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A quadrature or root solve stopped before reaching the requested accuracy.
// `achieved` carries the error estimate at the point of failure.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double achieved_estimate)
      : std::runtime_error(what), achieved(achieved_estimate) {}
  double achieved;
};

// Not an error so much as an outcome: the coupling is at or below threshold,
// so the operator has no eigenvalue above the band.  Carries the threshold
// so callers can report how far below the caller was.
class NoBoundState : public std::runtime_error {
public:
  NoBoundState(const std::string& what, double threshold_coupling)
      : std::runtime_error(what), threshold(threshold_coupling) {}
  double threshold;
};

}  // namespace latband
