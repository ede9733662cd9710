#pragma once

#include <stdexcept>
#include <string>

namespace greensign {

// Base class for every recoverable evaluation error in the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters lie on (or numerically too close to) a singular set of the
// problem: the eigenline m + M = 0, the reflection spectrum m = k*pi/T,
// or m = 0 for the periodic ODE kernel.
struct SingularParameter : Error {
  using Error::Error;
};

// Coordinate outside the kernel's square of definition, or an invalid
// configuration value (T <= 0, empty range, unsupported base kernel, ...).
struct DomainError : Error {
  using Error::Error;
};

// A one-sided evaluation was requested on a branch boundary where the side
// information does not determine the branch: side = Exact on a discontinuity
// line, or two coincident limits taken from the same side.
struct AmbiguousSide : Error {
  using Error::Error;
};

// |det A| fell below the singularity threshold during assembly; the
// parameter pair is an (approximate) eigenvalue of the problem.
struct SingularMatrix : Error {
  SingularMatrix(const std::string& what, double det_value, double threshold_value)
      : Error(what), det(det_value), threshold(threshold_value) {}
  double det;
  double threshold;
};

// The denominator of the fixed-point operator vanished at the requested point.
struct ZeroDenominator : Error {
  using Error::Error;
};

// A sampled function does not match the solver grid (size or breakpoint
// alignment).
struct GridMismatch : Error {
  using Error::Error;
};

// A monotone iterate violated the expected ordering beyond the slack.
// Signals a failed one-sided Lipschitz hypothesis or a too-coarse grid.
struct MonotonicityViolation : Error {
  MonotonicityViolation(const std::string& what, int iteration_value, int node_value,
                        double excess_value)
      : Error(what), iteration(iteration_value), node(node_value), excess(excess_value) {}
  int iteration;
  int node;
  double excess;
};

}  // namespace greensign
