#pragma once

#include <functional>
#include <span>
#include <vector>

#include "greensign/errors.hpp"

namespace greensign {

enum class QuadratureMode { AnalyticPreferred, AdaptiveOnly };

// Settings for the adaptive fallback path.  The analytic antiderivative is
// used wherever one exists unless mode = AdaptiveOnly forces quadrature.
struct QuadratureCfg {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  QuadratureMode mode = QuadratureMode::AnalyticPreferred;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw DomainError("QuadratureCfg: tolerances must be positive");
    if (max_subdivisions < 1)
      throw DomainError("QuadratureCfg: max_subdivisions must be >= 1");
  }
};

// Adaptive Gauss-Kronrod (G7/K15) on a piece where f is smooth.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureCfg& cfg);

// Integral of f over [a, b], splitting at the given breakpoints (values
// outside (a, b) are ignored).  f must be evaluable in the open interior of
// every piece.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breaks, const QuadratureCfg& cfg);

}  // namespace greensign
