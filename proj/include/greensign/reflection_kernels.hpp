#pragma once

#include "greensign/params.hpp"
#include "greensign/sided.hpp"

namespace greensign {

// Kernels of the periodic reflection problems on [-T, T]:
//
//   v''(t) + m^2 v(t) = f(t)          (second-order kernel G_m)
//   v'(t)  + m v(-t)  = h(t)          (first-order kernel Gbar_m)
//
//   G_m(t,s) = cos(m(T+s-t)) / (2 m sin(mT))   for s <= t,
//              cos(m(T-s+t)) / (2 m sin(mT))   for s >= t,
//
//   Gbar_m(t,s) = m G_m(t,-s) - dG_m/ds (t,s),
//
// which works out, with prefactor 1/(2 sin(mT)), to the four-branch form
//
//   E (-t <= s < t):  cos(m(T-s-t)) + sin(m(T+s-t))
//   N (-s <= t < s):  cos(m(T-s-t)) - sin(m(T-s+t))
//   S (s <= -|t|):    cos(m(T+s+t)) + sin(m(T+s-t))
//   W (t <= -|s|):    cos(m(T+s+t)) - sin(m(T-s+t))
//
// Gbar_m is continuous across s = -t (adjacent branches agree there) and
// jumps by 1 across s = t.  Both are singular exactly when sin(mT) = 0,
// i.e. m = k*pi/T.

// The four branches, named by the triangle of [-T,T]^2 cut by the diagonals.
enum class GbarBranch { East, North, South, West };

// Selects the branch from the sides.  Throws AmbiguousSide when (t, s) sits
// on the discontinuity diagonal s = t without an ordering side.  On the
// continuous diagonal s = -t either adjacent branch is returned (they agree).
GbarBranch gbar_branch(SidedPoint t, SidedPoint s);

// Raw branch formula at numeric (t, s); no domain or side checks.
double g_reflection_branch(double m, double T, GbarBranch b, double t, double s);

// Second-order kernel G_m; continuous on the diagonal, so plain coordinates
// suffice.  Throws SingularParameter when sin(mT) = 0 or m = 0.
double g_reflection_second_order(double m, double T, double t, double s);

// First-order reflection kernel Gbar_m, branch-exact.
double g_reflection(double m, double T, SidedPoint t, SidedPoint s);

// lim_{t -> s^-} Gbar_m(t, s): N branch for s > 0 (or 0^+), W branch for
// s < 0 (or 0^-).  Throws AmbiguousSide at s = 0 with side Exact.
double g_reflection_diag_minus(double m, double T, SidedPoint s);

// lim_{t -> s^+} Gbar_m(t, s): E branch for s > 0, S branch for s < 0.
double g_reflection_diag_plus(double m, double T, SidedPoint s);

// Integral of r -> Gbar_m(t, r) over [a, b] in [-T, T], splitting at the
// branch boundaries r = t and r = -t and using the exact trigonometric
// antiderivative on every piece.
double integral_g_reflection(double m, double T, SidedPoint t, double a, double b);

// H-bar for T in (0, 1]:
//   Hbar_{m,M}(t,s) = Gbar_m(t,s) - M/(m+M) Gbar_m(0,s).
class HbarSmallT {
 public:
  explicit HbarSmallT(const ProblemParams& p);

  double at(SidedPoint t, SidedPoint s) const;
  double diag_minus(SidedPoint s) const;  // lim_{t->s^-} Hbar(t,s)
  // Integral of the second argument over [a, b], from the exact pieces.
  double integral_s_range(double t, double a, double b) const;
  double integral_s(double t) const { return integral_s_range(t, -p_.T, p_.T); }

  const ProblemParams& params() const { return p_; }
  double domain_T() const { return p_.T; }

 private:
  ProblemParams p_;
  double ratio_;  // M/(m+M)
};

// Diagonal side-limit trace of an H-bar evaluator:
//   q(s) = Hbar(s^-, s)       for s != -T,
//   q(-T) = Hbar(-T, -T^+).
// Its minimum locates where positivity of the kernel first fails.
template <class Kernel>
double q_bar(const Kernel& h, SidedPoint s) {
  double T = h.domain_T();
  if (s.value < -T || s.value > T) throw DomainError("q_bar: s outside [-T, T]");
  if (s.value == -T && s.side != Side::Plus) return h.at(exact(-T), after(-T));
  return h.diag_minus(s);
}

}  // namespace greensign
