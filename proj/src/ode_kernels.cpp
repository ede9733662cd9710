#include "greensign/ode_kernels.hpp"

#include <cmath>
#include <string>

namespace greensign {

namespace {

void require_in_interval(const ProblemParams& p, SidedPoint x, const char* name) {
  if (x.value < 0.0 || x.value > p.T)
    throw DomainError(std::string("g_ode_exp: ") + name + " outside [0, T]");
}

void require_nonsingular_ode(const ProblemParams& p) {
  if (p.ode_singular())
    throw SingularParameter("g_ode_exp: m = 0, the periodic ODE kernel does not exist");
}

}  // namespace

double g_ode_exp(const ProblemParams& p, SidedPoint t, SidedPoint s) {
  require_nonsingular_ode(p);
  p.require_valid_T();
  require_in_interval(p, t, "t");
  require_in_interval(p, s, "s");
  double denom = std::expm1(p.m * p.T);
  Order o = sided_order(s, t);
  if (o == Order::Less) return std::exp(p.m * (s.value - t.value + p.T)) / denom;
  if (o == Order::Greater) return std::exp(p.m * (s.value - t.value)) / denom;
  throw AmbiguousSide("g_ode_exp: t = s needs a side to select the branch");
}

double integral_g_ode(const ProblemParams& p, double t, double a, double b) {
  require_nonsingular_ode(p);
  if (a > b) return -integral_g_ode(p, t, b, a);
  double denom = std::expm1(p.m * p.T);
  double lo = std::min(std::max(t, a), b);  // split point at r = t
  // antiderivatives: branch r < t: e^{m(r-t+T)}/m ; branch r > t: e^{m(r-t)}/m
  double left = (std::exp(p.m * (lo - t + p.T)) - std::exp(p.m * (a - t + p.T))) / p.m;
  double right = (std::exp(p.m * (b - t)) - std::exp(p.m * (lo - t))) / p.m;
  return (left + right) / denom;
}

double h_ode_piecewise_smallT(const ProblemParams& p, SidedPoint t, SidedPoint s) {
  p.require_valid_T();
  if (p.T > 1.0)
    throw DomainError("h_ode_piecewise_smallT: closed form requires T <= 1");
  if (p.on_eigenline())
    throw SingularParameter("h_ode_piecewise_smallT: m + M = 0 is an eigenvalue line");
  if (p.ode_singular()) {
    // direct form for m = 0 (M != 0 guaranteed by the eigenline guard)
    require_in_interval(p, t, "t");
    require_in_interval(p, s, "s");
    Order o = sided_order(s, t);
    if (o == Order::Less) return (1.0 - p.M * t.value + p.M * p.T) / (p.M * p.T);
    if (o == Order::Greater) return (1.0 - p.M * t.value) / (p.M * p.T);
    throw AmbiguousSide("h_ode_piecewise_smallT: t = s needs a side");
  }
  return g_ode_exp(p, t, s) - p.M / (p.m + p.M) * g_ode_exp(p, exact(0.0), s);
}

double integral_h_ode_smallT(const ProblemParams& p, double t) {
  p.require_valid_T();
  if (p.T > 1.0)
    throw DomainError("integral_h_ode_smallT: closed form requires T <= 1");
  if (p.on_eigenline())
    throw SingularParameter("integral_h_ode_smallT: m + M = 0");
  if (p.ode_singular()) {
    // split [0,T] at r = t, antiderivatives of the two constant-slope pieces
    double lo = std::min(std::max(t, 0.0), p.T);
    auto left = [&](double r) { return (r - p.M * t * r + p.M * p.T * r) / (p.M * p.T); };
    auto right = [&](double r) { return (r - p.M * t * r) / (p.M * p.T); };
    return (left(lo) - left(0.0)) + (right(p.T) - right(lo));
  }
  return integral_g_ode(p, t, 0.0, p.T) -
         p.M / (p.m + p.M) * integral_g_ode(p, 0.0, 0.0, p.T);
}

double q_ode_smallT(const ProblemParams& p, SidedPoint s) {
  p.require_valid_T();
  if (s.value < 0.0 || s.value > p.T)
    throw DomainError("q_ode_smallT: s outside [0, T]");
  if (s.value == 0.0 && s.side != Side::Plus)
    throw DomainError("q_ode_smallT: q is defined on (0, T]; use s = 0^+ for the limit");
  if (p.on_eigenline())
    throw SingularParameter("q_ode_smallT: m + M = 0");
  if (p.ode_singular())
    return (1.0 - p.M * s.value) / (p.M * p.T);
  // lim_{t->s^-} G_m(t,s) = 1/(e^{mT}-1)
  double denom = std::expm1(p.m * p.T);
  double g0s = std::exp(p.m * s.value) / denom;  // G_m(0, s), s > 0
  return 1.0 / denom - p.M / (p.m + p.M) * g0s;
}

const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::OdeExp: return "ode-exp";
    case KernelKind::OdePiecewise: return "ode-piecewise";
    case KernelKind::ReflectionSecondOrder: return "reflection-second-order";
    case KernelKind::ReflectionFirstOrder: return "reflection-first-order";
    default: return "reflection-piecewise";
  }
}

}  // namespace greensign
