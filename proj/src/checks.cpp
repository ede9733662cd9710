#include "greensign/checks.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "greensign/assembly.hpp"
#include "greensign/ode_kernels.hpp"
#include "greensign/reflection_kernels.hpp"

namespace greensign {

namespace {

struct Recorder {
  CheckResult r;
  explicit Recorder(std::string name, double tol) {
    r.name = std::move(name);
    r.passed = true;
    r.worst = 0.0;
    r.tolerance = tol;
  }
  void observe(double deviation, const std::string& where) {
    if (deviation > r.worst) {
      r.worst = deviation;
      r.note = where;
      if (deviation > r.tolerance) r.passed = false;
    }
  }
};

std::string point_note(double m, double M, double T) {
  std::ostringstream os;
  os << "(m=" << m << ", M=" << M << ", T=" << T << ")";
  return os.str();
}

// admissible random reflection parameters: away from the eigenline, the
// spectrum and the pi/4T sign-change threshold is not required here
ProblemParams draw_reflection(std::mt19937_64& rng, double T) {
  std::uniform_real_distribution<double> um(-0.7, 0.7);
  std::uniform_real_distribution<double> uM(-1.0, 1.0);
  for (;;) {
    ProblemParams p{um(rng), uM(rng), T};
    if (p.on_eigenline() || p.reflection_singular()) continue;
    if (std::abs(p.m) < 0.02 || std::abs(p.m + p.M) < 0.05) continue;
    return p;
  }
}

double rand_in(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// interior coordinate away from breakpoints and the lines t = +-s
double draw_interior(std::mt19937_64& rng, double T, double margin) {
  for (;;) {
    double v = rand_in(rng, -T + margin, T - margin);
    if (std::abs(v - std::round(v)) < margin) continue;
    if (std::abs(v) < margin) continue;
    return v;
  }
}

}  // namespace

CheckReport run_check_suite(std::uint64_t seed, std::optional<ProblemParams> at,
                            const QuadratureCfg& cfg) {
  CheckReport report;
  std::mt19937_64 rng(seed);

  auto pick = [&](double T) {
    if (at) return *at;
    return draw_reflection(rng, T);
  };

  {  // jump laws, small T
    Recorder rec("jump-laws", 1e-10);
    for (int i = 0; i < 40; ++i) {
      ProblemParams p = at && at->T <= 1.0 ? *at : draw_reflection(rng, 0.9);
      HbarSmallT h(p);
      double t = draw_interior(rng, p.T, 1e-3);
      double j1 = h.at(after(t), exact(t)) - h.at(before(t), exact(t));
      double j2 = h.at(exact(t), before(t)) - h.at(exact(t), after(t));
      rec.observe(std::abs(j1 - 1.0), "t-jump at " + point_note(p.m, p.M, p.T));
      rec.observe(std::abs(j2 - 1.0), "s-jump at " + point_note(p.m, p.M, p.T));
    }
    report.results.push_back(rec.r);
  }

  {  // symmetry Hbar_{m,M}(t,s) = -Hbar_{-m,-M}(-t,-s)
    Recorder rec("reflection-symmetry", 1e-8);
    for (int i = 0; i < 60; ++i) {
      ProblemParams p = pick(i % 2 ? 0.8 : 1.6);
      try {
        AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, cfg);
        AssembledKernel km = assemble(ProblemParams{-p.m, -p.M, p.T},
                                      KernelKind::ReflectionFirstOrder, cfg);
        double t = draw_interior(rng, p.T, 1e-3);
        double s = draw_interior(rng, p.T, 1e-3);
        if (std::abs(t - s) < 1e-3 || std::abs(t + s) < 1e-3) continue;
        double v = k.at(exact(t), exact(s)) + km.at(exact(-t), exact(-s));
        rec.observe(std::abs(v), point_note(p.m, p.M, p.T));
      } catch (const SingularMatrix&) {
        continue;
      }
    }
    report.results.push_back(rec.r);
  }

  {  // defining equation, reflection: dH/dt + m H(-t,s) + M H([t],s) = 0
    Recorder rec("defining-equation-reflection", 1e-4);
    const double h = 1e-5;
    for (int i = 0; i < 40; ++i) {
      ProblemParams p = pick(i % 2 ? 0.8 : 1.3);
      try {
        AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, cfg);
        double t = draw_interior(rng, p.T, 1e-2);
        double s = draw_interior(rng, p.T, 1e-2);
        if (std::abs(t - s) < 1e-2 || std::abs(t + s) < 1e-2) continue;
        double deriv = (k.at(exact(t + h), exact(s)) - k.at(exact(t - h), exact(s))) / (2 * h);
        double res = deriv + p.m * k.at(exact(-t), exact(s)) +
                     p.M * k.at(exact(static_cast<double>(floor_tz(t))), exact(s));
        rec.observe(std::abs(res), point_note(p.m, p.M, p.T));
      } catch (const SingularMatrix&) {
        continue;
      }
    }
    report.results.push_back(rec.r);
  }

  {  // defining equation, ODE: dH/dt + m H + M H(0,s) = 0
    Recorder rec("defining-equation-ode", 1e-4);
    const double h = 1e-5;
    for (int i = 0; i < 40; ++i) {
      ProblemParams p = at && at->T <= 1.0 ? *at : ProblemParams{rand_in(rng, -2, 2),
                                                                 rand_in(rng, -1, 2), 1.0};
      if (p.on_eigenline() || std::abs(p.m) < 0.02) continue;
      double t = rand_in(rng, 0.05, p.T - 0.05);
      double s = rand_in(rng, 0.05, p.T - 0.05);
      if (std::abs(t - s) < 1e-2) continue;
      double deriv = (h_ode_piecewise_smallT(p, exact(t + h), exact(s)) -
                      h_ode_piecewise_smallT(p, exact(t - h), exact(s))) /
                     (2 * h);
      double res = deriv + p.m * h_ode_piecewise_smallT(p, exact(t), exact(s)) +
                   p.M * h_ode_piecewise_smallT(p, exact(0.0), exact(s));
      rec.observe(std::abs(res), point_note(p.m, p.M, p.T));
    }
    report.results.push_back(rec.r);
  }

  {  // normalizations
    Recorder rec("normalization", 1e-9);
    for (int i = 0; i < 25; ++i) {
      ProblemParams p = pick(i % 2 ? 0.7 : 1.6);
      try {
        AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, cfg);
        double t = draw_interior(rng, p.T, 1e-3);
        rec.observe(std::abs(k.integral_s(t) - 1.0 / (p.m + p.M)),
                    "int Hbar " + point_note(p.m, p.M, p.T));
        rec.observe(std::abs(integral_g_reflection(p.m, p.T, exact(t), -p.T, p.T) - 1.0 / p.m),
                    "int Gbar " + point_note(p.m, 0, p.T));
      } catch (const SingularMatrix&) {
        continue;
      }
      ProblemParams po{rand_in(rng, 0.1, 2.0), 0.0, 1.0};
      double t = rand_in(rng, 0.0, po.T);
      rec.observe(std::abs(integral_g_ode(po, t, 0.0, po.T) - 1.0 / po.m), "int G ode");
    }
    report.results.push_back(rec.r);
  }

  {  // determinant identities
    Recorder rec("determinant", 1e-8);
    for (int i = 0; i < 10; ++i) {
      ProblemParams p = pick(1.6);
      double d1 = det_A(p, KernelKind::ReflectionFirstOrder, cfg);
      double d2 = det_A(ProblemParams{-p.m, -p.M, p.T}, KernelKind::ReflectionFirstOrder, cfg);
      rec.observe(std::abs(d1 - d2) / std::max(1.0, std::abs(d1)),
                  "det symmetry " + point_note(p.m, p.M, p.T));
      double d0 = det_A(ProblemParams{p.m, -p.m, p.T}, KernelKind::ReflectionFirstOrder, cfg);
      rec.observe(std::abs(d0), "eigenline det " + point_note(p.m, -p.m, p.T));
    }
    report.results.push_back(rec.r);
  }

  {  // comparison-relation residual
    Recorder rec("comparison-residual", 1e-7);
    for (int i = 0; i < 12; ++i) {
      double T = at ? std::min(at->T, 1.0) : 0.8;
      ProblemParams p0 = draw_reflection(rng, T);
      ProblemParams p1 = draw_reflection(rng, T);
      double t = draw_interior(rng, T, 1e-2);
      double s = draw_interior(rng, T, 1e-2);
      if (std::abs(t - s) < 1e-2 || std::abs(t + s) < 1e-2) continue;
      double res = comparison_residual(p0, p1, exact(t), exact(s), cfg);
      rec.observe(std::abs(res), point_note(p0.m, p0.M, T) + " vs " +
                                     point_note(p1.m, p1.M, T));
    }
    report.results.push_back(rec.r);
  }

  return report;
}

}  // namespace greensign
