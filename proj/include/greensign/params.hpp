#pragma once

#include <algorithm>
#include <cmath>

#include "greensign/errors.hpp"

namespace greensign {

// The closed-form kernels this library evaluates.
enum class KernelKind {
  OdeExp,                 // periodic v' + m v = sigma on [0,T]
  OdePiecewise,           // periodic v' + m v + M v([t]) = sigma on [0,T]
  ReflectionSecondOrder,  // periodic v'' + m^2 v = f on [-T,T]
  ReflectionFirstOrder,   // periodic v' + m v(-t) = h on [-T,T]
  ReflectionPiecewise,    // periodic v' + m v(-t) + M v([t]) = h on [-T,T]
};

const char* kernel_kind_name(KernelKind k);

// The (m, M, T) triple together with its singularity predicates.  The guards
// use relative thresholds so they behave sensibly at large parameters.
struct ProblemParams {
  double m = 0.0;
  double M = 0.0;
  double T = 1.0;

  // m + M = 0 is a straight line of eigenvalues of the piecewise problems.
  bool on_eigenline() const {
    return std::abs(m + M) <= 1e-12 * std::max({1.0, std::abs(m), std::abs(M)});
  }

  // m = k*pi/T (sin(mT) = 0) is the spectrum of the reflection problem;
  // k = 0 is included, since the first-order reflection kernel needs m != 0.
  bool reflection_singular() const {
    return std::abs(std::sin(m * T)) <= 1e-12 * std::max(1.0, std::abs(m * T));
  }

  // The periodic ODE kernel exists iff m != 0.
  bool ode_singular() const { return m == 0.0; }

  void require_valid_T() const {
    if (!(T > 0.0)) throw DomainError("ProblemParams: T must be positive");
  }
};

}  // namespace greensign
