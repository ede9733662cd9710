#include "greensign/reflection_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace greensign {

namespace {

void require_reflection_regular(double m, double T, const char* who) {
  ProblemParams p{m, 0.0, T};
  p.require_valid_T();
  if (p.reflection_singular())
    throw SingularParameter(std::string(who) +
                            ": m = k*pi/T (sin(mT) = 0), the reflection kernel does not exist");
}

void require_in_square(double T, SidedPoint x, const char* who, const char* name) {
  if (x.value < -T || x.value > T)
    throw DomainError(std::string(who) + ": " + name + " outside [-T, T]");
}

}  // namespace

GbarBranch gbar_branch(SidedPoint t, SidedPoint s) {
  Order vs_t = sided_order(s, t);
  if (vs_t == Order::Equal || vs_t == Order::Ambiguous)
    throw AmbiguousSide("g_reflection: (t, s) sits on the diagonal s = t; "
                        "sides do not determine the branch");
  // Across s = -t the kernel is continuous, so an unordered comparison there
  // may resolve to either adjacent branch.
  Order vs_mt = sided_order(s, negate(t));
  bool s_above_mt = vs_mt != Order::Less;
  if (vs_t == Order::Less) return s_above_mt ? GbarBranch::East : GbarBranch::South;
  return s_above_mt ? GbarBranch::North : GbarBranch::West;
}

double g_reflection_branch(double m, double T, GbarBranch b, double t, double s) {
  double pref = 1.0 / (2.0 * std::sin(m * T));
  switch (b) {
    case GbarBranch::East:
      return pref * (std::cos(m * (T - s - t)) + std::sin(m * (T + s - t)));
    case GbarBranch::North:
      return pref * (std::cos(m * (T - s - t)) - std::sin(m * (T - s + t)));
    case GbarBranch::South:
      return pref * (std::cos(m * (T + s + t)) + std::sin(m * (T + s - t)));
    default:  // West
      return pref * (std::cos(m * (T + s + t)) - std::sin(m * (T - s + t)));
  }
}

double g_reflection_second_order(double m, double T, double t, double s) {
  require_reflection_regular(m, T, "g_reflection_second_order");
  if (m == 0.0)
    throw SingularParameter("g_reflection_second_order: m = 0");
  require_in_square(T, exact(t), "g_reflection_second_order", "t");
  require_in_square(T, exact(s), "g_reflection_second_order", "s");
  double pref = 1.0 / (2.0 * m * std::sin(m * T));
  return s <= t ? pref * std::cos(m * (T + s - t)) : pref * std::cos(m * (T - s + t));
}

double g_reflection(double m, double T, SidedPoint t, SidedPoint s) {
  require_reflection_regular(m, T, "g_reflection");
  require_in_square(T, t, "g_reflection", "t");
  require_in_square(T, s, "g_reflection", "s");
  return g_reflection_branch(m, T, gbar_branch(t, s), t.value, s.value);
}

double g_reflection_diag_minus(double m, double T, SidedPoint s) {
  require_reflection_regular(m, T, "g_reflection_diag_minus");
  require_in_square(T, s, "g_reflection_diag_minus", "s");
  bool upper = s.value > 0.0 || (s.value == 0.0 && s.side == Side::Plus);
  bool lower = s.value < 0.0 || (s.value == 0.0 && s.side == Side::Minus);
  if (!upper && !lower)
    throw AmbiguousSide("g_reflection_diag_minus: s = 0 needs a side");
  GbarBranch b = upper ? GbarBranch::North : GbarBranch::West;
  return g_reflection_branch(m, T, b, s.value, s.value);
}

double g_reflection_diag_plus(double m, double T, SidedPoint s) {
  require_reflection_regular(m, T, "g_reflection_diag_plus");
  require_in_square(T, s, "g_reflection_diag_plus", "s");
  bool upper = s.value > 0.0 || (s.value == 0.0 && s.side == Side::Plus);
  bool lower = s.value < 0.0 || (s.value == 0.0 && s.side == Side::Minus);
  if (!upper && !lower)
    throw AmbiguousSide("g_reflection_diag_plus: s = 0 needs a side");
  GbarBranch b = upper ? GbarBranch::East : GbarBranch::South;
  return g_reflection_branch(m, T, b, s.value, s.value);
}

namespace {

// Antiderivative in r of the branch integrand (numerator only; the caller
// divides by 2 sin(mT)).
double branch_antiderivative(double m, double T, GbarBranch b, double t, double r) {
  switch (b) {
    case GbarBranch::East:
      return (-std::sin(m * (T - r - t)) - std::cos(m * (T + r - t))) / m;
    case GbarBranch::North:
      return (-std::sin(m * (T - r - t)) - std::cos(m * (T - r + t))) / m;
    case GbarBranch::South:
      return (std::sin(m * (T + r + t)) - std::cos(m * (T + r - t))) / m;
    default:  // West
      return (std::sin(m * (T + r + t)) - std::cos(m * (T - r + t))) / m;
  }
}

GbarBranch branch_at_numeric(double t, double r) {
  // r strictly inside a branch region (callers pass midpoints of pieces)
  if (r < t) return r >= -t ? GbarBranch::East : GbarBranch::South;
  return r >= -t ? GbarBranch::North : GbarBranch::West;
}

}  // namespace

double integral_g_reflection(double m, double T, SidedPoint t, double a, double b) {
  require_reflection_regular(m, T, "integral_g_reflection");
  if (a == b) return 0.0;
  if (a > b) return -integral_g_reflection(m, T, t, b, a);
  double tv = t.value;
  double cut1 = std::min(std::max(std::min(tv, -tv), a), b);
  double cut2 = std::min(std::max(std::max(tv, -tv), a), b);
  double pts[4] = {a, cut1, cut2, b};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    GbarBranch br = branch_at_numeric(tv, 0.5 * (pts[i] + pts[i + 1]));
    total += branch_antiderivative(m, T, br, tv, pts[i + 1]) -
             branch_antiderivative(m, T, br, tv, pts[i]);
  }
  return total / (2.0 * std::sin(m * T));
}

HbarSmallT::HbarSmallT(const ProblemParams& p) : p_(p) {
  p_.require_valid_T();
  if (p_.T > 1.0)
    throw DomainError("HbarSmallT: closed form requires T <= 1");
  if (p_.on_eigenline())
    throw SingularParameter("HbarSmallT: m + M = 0 is an eigenvalue line");
  if (p_.reflection_singular())
    throw SingularParameter("HbarSmallT: m = k*pi/T, the base kernel does not exist");
  ratio_ = p_.M / (p_.m + p_.M);
}

double HbarSmallT::at(SidedPoint t, SidedPoint s) const {
  return g_reflection(p_.m, p_.T, t, s) -
         ratio_ * g_reflection(p_.m, p_.T, exact(0.0), s);
}

double HbarSmallT::diag_minus(SidedPoint s) const {
  return g_reflection_diag_minus(p_.m, p_.T, s) -
         ratio_ * g_reflection(p_.m, p_.T, exact(0.0), s);
}

double HbarSmallT::integral_s_range(double t, double a, double b) const {
  return integral_g_reflection(p_.m, p_.T, exact(t), a, b) -
         ratio_ * integral_g_reflection(p_.m, p_.T, exact(0.0), a, b);
}

}  // namespace greensign
