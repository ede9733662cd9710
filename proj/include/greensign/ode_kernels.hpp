#pragma once

#include "greensign/params.hpp"
#include "greensign/sided.hpp"

namespace greensign {

// Closed forms for the periodic problems on I = [0, T]:
//
//   v'(t) + m v(t)            = sigma(t),  v(0) = v(T)     (kernel G_m, m != 0)
//   v'(t) + m v(t) + M v([t]) = sigma(t),  v(0) = v(T)     (kernel H_{m,M}, T <= 1)
//
//   G_m(t,s) = e^{m(s-t+T)} / (e^{mT} - 1)   for s < t,
//              e^{m(s-t)}   / (e^{mT} - 1)   for s > t,
//
//   H_{m,M}(t,s) = G_m(t,s) - M/(m+M) G_m(0,s)            (m != 0),
//   H_{0,M}(t,s) = (1 - M t + M T) / (M T)   for s < t,
//                  (1 - M t)       / (M T)   for s > t.
//
// Branches on the diagonal are selected from the sides of t and s; side =
// Exact at t = s is rejected rather than averaged.

// G_m.  Throws SingularParameter (m = 0), DomainError (coordinates outside
// [0,T]), AmbiguousSide (unresolvable diagonal).
double g_ode_exp(const ProblemParams& p, SidedPoint t, SidedPoint s);

// Exact antiderivative of r -> G_m(t, r) over [a, b] in [0, T].
double integral_g_ode(const ProblemParams& p, double t, double a, double b);

// H_{m,M} for T in (0, 1].  Throws SingularParameter on m + M = 0.
double h_ode_piecewise_smallT(const ProblemParams& p, SidedPoint t, SidedPoint s);

// Integral of s -> H_{m,M}(t, s) over [0, T], composed from the exact pieces.
double integral_h_ode_smallT(const ProblemParams& p, double t);

// Diagonal side-limit trace q(s) = H_{m,M}(s^-, s), s in (0, T].
double q_ode_smallT(const ProblemParams& p, SidedPoint s);

}  // namespace greensign
