#include "greensign/sign_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "greensign/parallel.hpp"

namespace greensign {

const char* to_string(SignClass c) {
  switch (c) {
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
    case SignClass::SignChanging: return "sign-changing";
    case SignClass::Singular: return "singular";
    default: return "undetermined";
  }
}

const char* to_string(RegionStrategy s) {
  switch (s) {
    case RegionStrategy::ClosedFormOde: return "closed-form-ode";
    case RegionStrategy::ClosedFormReflectionSmallT: return "closed-form-reflection";
    case RegionStrategy::MinScan: return "min-scan";
    default: return "fixed-point-scan";
  }
}

RegionBounds ode_region_boundary(double m, double T) {
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("ode_region_boundary: requires T in (0, 1]");
  if (m == 0.0) return {0.0, 1.0 / T};
  return {-m, m / std::expm1(m * T)};
}

RegionBounds ode_region_boundary_negative(double m, double T) {
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("ode_region_boundary_negative: requires T in (0, 1]");
  if (m == 0.0) return {-1.0 / T, 0.0};
  return {m / std::expm1(-m * T), -m};
}

RegionBounds reflection_region_boundary_smallT(double m, double T) {
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("reflection_region_boundary_smallT: requires T in (0, 1]");
  if (std::abs(m) >= std::numbers::pi / (4.0 * T))
    throw DomainError("reflection_region_boundary_smallT: |m| >= pi/(4T), the kernel "
                      "changes sign for every M");
  if (m == 0.0) return {0.0, 0.5 / T};
  return {-m, 0.5 * m * (-1.0 + 1.0 / std::tan(m * T))};
}

RegionBounds reflection_region_boundary_smallT_negative(double m, double T) {
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("reflection_region_boundary_smallT_negative: requires T in (0, 1]");
  if (std::abs(m) >= std::numbers::pi / (4.0 * T))
    throw DomainError("reflection_region_boundary_smallT_negative: |m| >= pi/(4T)");
  if (m == 0.0) return {-0.5 / T, 0.0};
  return {-0.5 * m * (1.0 + 1.0 / std::tan(m * T)), -m};
}

double fixed_point_operator(double m, double M, double T, SidedPoint t, SidedPoint s,
                            const AssembledKernel& k) {
  if (m != k.params().m || M != k.params().M || T != k.params().T)
    throw DomainError("fixed_point_operator: (m, M, T) disagree with the assembled kernel");
  // a coincident equal-sided pair is the diagonal limit t -> s^- (the
  // geometry of every q-bar style candidate)
  double num = sided_order(s, t) == Order::Ambiguous ? g_reflection_diag_minus(m, T, s)
                                                     : g_reflection(m, T, t, s);
  double den = 0.0;
  double scale = 0.0;
  for (int i = 0; i < k.size(); ++i) {
    double h = k.at(exact(k.layout().cells[static_cast<std::size_t>(i)].label), s);
    double c = k.cell_integral(t.value, i);
    den += h * c;
    scale += std::abs(h * c);
  }
  if (std::abs(den) <= 1e-12 * std::max(scale, 1e-300))
    throw ZeroDenominator("fixed_point_operator: denominator vanishes at the "
                          "requested (t, s)");
  return num / den;
}

std::vector<SidedPoint> scan_t_grid(double T, int per_unit) {
  std::vector<SidedPoint> grid;
  int count = std::max(2, static_cast<int>(std::ceil(2.0 * T * per_unit)));
  for (int i = 1; i < count; ++i) {
    double v = -T + 2.0 * T * i / count;
    if (v <= -T || v >= T) continue;
    // keep off breakpoints; the sided pairs below cover them exactly
    if (std::abs(v - std::round(v)) < 1e-9 || std::abs(v) < 1e-9) continue;
    grid.push_back(exact(v));
  }
  grid.push_back(exact(-T));
  grid.push_back(exact(T));
  long tT = floor_tz(T);
  for (long n = -tT; n <= tT; ++n) {  // covers 0 for every T
    double v = static_cast<double>(n);
    if (v > -T) grid.push_back(before(v));
    if (v < T) grid.push_back(after(v));
  }
  return grid;
}

std::vector<SidedPoint> scan_integer_s(double T) {
  std::vector<SidedPoint> out;
  long tT = floor_tz(T);
  for (long n = -tT; n <= tT; ++n) {
    double v = static_cast<double>(n);
    if (v > -T) out.push_back(before(v));
    if (v < T) out.push_back(after(v));
  }
  out.push_back(exact(T));
  out.push_back(exact(-T));
  return out;
}

namespace {

// candidate diagonal s-grid strictly inside (-T, T), avoiding breakpoints
std::vector<SidedPoint> diagonal_s_grid(double T, int count) {
  std::vector<SidedPoint> out;
  for (int i = 0; i < count; ++i) {
    double v = -T + (i + 0.5) * 2.0 * T / count;
    if (std::abs(v - std::round(v)) < 1e-9) continue;
    out.push_back(exact(v));
  }
  return out;
}

template <class Kernel>
MinScanResult min_scan_impl(const Kernel& k, const MinScanCandidates& cand) {
  double T = k.domain_T();
  MinScanResult best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](double v, SidedPoint t, SidedPoint s) {
    if (v < best.value) best = {v, t, s};
  };
  std::vector<SidedPoint> qs;
  if (cand.integer_sides) {
    long tT = floor_tz(T);
    for (long n = -tT; n <= tT; ++n) {
      double v = static_cast<double>(n);
      if (v > -T) qs.push_back(before(v));
      if (v < T) qs.push_back(after(v));
    }
  }
  if (cand.endpoints) {
    qs.push_back(exact(T));
    qs.push_back(exact(-T));
  }
  if (cand.diagonal)
    for (SidedPoint s : diagonal_s_grid(T, cand.scan.diagonal_samples)) qs.push_back(s);
  for (SidedPoint s : qs)
    consider(q_bar(k, s), before(s.value), s);
  if (cand.cross) {
    std::vector<SidedPoint> ts = scan_t_grid(T, cand.scan.t_per_unit);
    for (SidedPoint s : scan_integer_s(T)) {
      for (SidedPoint t : ts) {
        try {
          consider(k.at(t, s), t, s);
        } catch (const AmbiguousSide&) {
          // coincident sided pair; its limit is already covered by q-bar
        }
      }
    }
  }
  return best;
}

}  // namespace

MinScanResult min_scan_minimum(const AssembledKernel& k, const MinScanCandidates& cand) {
  return min_scan_impl(k, cand);
}

MinScanResult min_scan_minimum(const HbarSmallT& k, const MinScanCandidates& cand) {
  return min_scan_impl(k, cand);
}

namespace {

// positive-sign test at m + M > 0, |mT| < pi/4, m != 0, T > 1 (the three-case
// numeric procedure)
ClassifyResult positive_test_bigT(double m, double M, double T, const QuadratureCfg& q,
                                  const ScanCfg& scan) {
  ProblemParams p{m, M, T};
  AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, q);
  if (M == 0.0) {
    // Hbar = Gbar: strictly positive iff mT in (0, pi/4)
    return {m > 0.0 ? SignClass::Positive : SignClass::SignChanging, RegionStrategy::MinScan};
  }
  if (m > 0.0 && M > 0.0) {
    MinScanCandidates cand;
    cand.scan = scan;
    MinScanResult r = min_scan_minimum(k, cand);
    return {r.value > 0.0 ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::MinScan};
  }
  if (m > 0.0 && M < 0.0) {
    MinScanCandidates cand;
    cand.diagonal = true;
    cand.cross = true;
    cand.scan = scan;
    MinScanResult r = min_scan_minimum(k, cand);
    return {r.value > 0.0 ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::MinScan};
  }
  // m < 0, M > 0: maximize the fixed-point operator over the t-grid and the
  // sided integer s-candidates; the kernel is positive iff M exceeds the max.
  bool zero_den = false;
  double fp_max = -std::numeric_limits<double>::infinity();
  std::vector<SidedPoint> ts = scan_t_grid(T, scan.t_per_unit);
  for (SidedPoint s : scan_integer_s(T)) {
    for (SidedPoint t : ts) {
      try {
        fp_max = std::max(fp_max, fixed_point_operator(m, M, T, t, s, k));
      } catch (const ZeroDenominator&) {
        zero_den = true;
      } catch (const AmbiguousSide&) {
      }
    }
  }
  if (!zero_den && std::isfinite(fp_max))
    return {M > fp_max ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::FixedPointScan};
  // fall back to a direct minimum over the same candidate family
  MinScanCandidates cand;
  cand.cross = true;
  cand.scan = scan;
  MinScanResult r = min_scan_minimum(k, cand);
  if (std::isfinite(r.value))
    return {r.value > 0.0 ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::MinScan};
  return {SignClass::Undetermined, RegionStrategy::MinScan};
}

ClassifyResult classify_smallT_closed_form(double m, double M, double T) {
  RegionBounds pos = reflection_region_boundary_smallT(m, T);
  if (M > pos.M_low && M < pos.M_high)
    return {SignClass::Positive, RegionStrategy::ClosedFormReflectionSmallT};
  RegionBounds neg = reflection_region_boundary_smallT_negative(m, T);
  if (M > neg.M_low && M < neg.M_high)
    return {SignClass::Negative, RegionStrategy::ClosedFormReflectionSmallT};
  if (M == pos.M_low || M == pos.M_high || M == neg.M_low || M == neg.M_high)
    return {SignClass::Undetermined, RegionStrategy::ClosedFormReflectionSmallT};
  return {SignClass::SignChanging, RegionStrategy::ClosedFormReflectionSmallT};
}

ClassifyResult classify_smallT_min_scan(double m, double M, double T, const ScanCfg& scan) {
  ProblemParams p{m, M, T};
  auto scan_positive = [&](double mm, double MM) {
    HbarSmallT h(ProblemParams{mm, MM, T});
    MinScanCandidates cand;
    cand.diagonal = MM < 0.0;
    cand.scan = scan;
    return min_scan_minimum(h, cand).value > 0.0;
  };
  if (p.m + p.M > 0.0)
    return {scan_positive(m, M) ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::MinScan};
  return {scan_positive(-m, -M) ? SignClass::Negative : SignClass::SignChanging,
          RegionStrategy::MinScan};
}

}  // namespace

ClassifyResult classify_point_ex(double m, double M, double T, const QuadratureCfg& q,
                                 const ScanCfg& scan, std::optional<RegionStrategy> force) {
  ProblemParams p{m, M, T};
  p.require_valid_T();
  RegionStrategy attempted = T <= 1.0 ? RegionStrategy::ClosedFormReflectionSmallT
                                      : RegionStrategy::MinScan;
  if (force) attempted = *force;
  if (p.on_eigenline()) return {SignClass::Singular, attempted};
  if (m == 0.0 && T > 1.0) return {SignClass::Singular, attempted};
  if (m != 0.0 && p.reflection_singular()) return {SignClass::Singular, attempted};
  if (std::abs(m) * T >= 0.25 * std::numbers::pi)
    return {SignClass::SignChanging, attempted};
  try {
    if (T <= 1.0) {
      if (force == RegionStrategy::MinScan && m != 0.0)
        return classify_smallT_min_scan(m, M, T, scan);
      // m = 0 columns always classify through the continuity limits
      return classify_smallT_closed_form(m, M, T);
    }
    if (m + M > 0.0) return positive_test_bigT(m, M, T, q, scan);
    ClassifyResult mirror = positive_test_bigT(-m, -M, T, q, scan);
    if (mirror.cls == SignClass::Positive) return {SignClass::Negative, mirror.strategy};
    if (mirror.cls == SignClass::SignChanging)
      return {SignClass::SignChanging, mirror.strategy};
    return mirror;
  } catch (const SingularMatrix&) {
    return {SignClass::Singular, attempted};
  } catch (const SingularParameter&) {
    return {SignClass::Singular, attempted};
  } catch (const Error&) {
    return {SignClass::Undetermined, attempted};
  }
}

SignClass classify_point(double m, double M, double T, const QuadratureCfg& q) {
  return classify_point_ex(m, M, T, q).cls;
}

ClassifyResult classify_point_ode(double m, double M, double T, bool min_scan) {
  ProblemParams p{m, M, T};
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("classify_point_ode: requires T in (0, 1]");
  if (p.on_eigenline())
    return {SignClass::Singular,
            min_scan ? RegionStrategy::MinScan : RegionStrategy::ClosedFormOde};
  if (!min_scan) {
    RegionBounds pos = ode_region_boundary(m, T);
    if (M > pos.M_low && M < pos.M_high)
      return {SignClass::Positive, RegionStrategy::ClosedFormOde};
    RegionBounds neg = ode_region_boundary_negative(m, T);
    if (M > neg.M_low && M < neg.M_high)
      return {SignClass::Negative, RegionStrategy::ClosedFormOde};
    return {SignClass::SignChanging, RegionStrategy::ClosedFormOde};
  }
  auto scan_positive = [&](double mm, double MM) {
    ProblemParams pp{mm, MM, T};
    double q0 = q_ode_smallT(pp, after(0.0));
    double qT = q_ode_smallT(pp, exact(T));
    return std::min(q0, qT) > 0.0;
  };
  if (m + M > 0.0)
    return {scan_positive(m, M) ? SignClass::Positive : SignClass::SignChanging,
            RegionStrategy::MinScan};
  return {scan_positive(-m, -M) ? SignClass::Negative : SignClass::SignChanging,
          RegionStrategy::MinScan};
}

RegionGrid sweep_region(std::pair<double, double> m_range, std::pair<double, double> M_range,
                        std::pair<int, int> resolution, double T, const QuadratureCfg& q,
                        SweepKind kind, std::optional<RegionStrategy> force,
                        const ScanCfg& scan, int threads) {
  RegionGrid grid;
  grid.T = T;
  grid.kind = kind;
  auto linspace = [](std::pair<double, double> r, int n) {
    std::vector<double> axis;
    if (n <= 0 || r.second < r.first) return axis;
    axis.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
      axis.push_back(0.5 * (r.first + r.second));
      return axis;
    }
    for (int i = 0; i < n; ++i)
      axis.push_back(r.first + (r.second - r.first) * i / (n - 1));
    return axis;
  };
  grid.m_axis = linspace(m_range, resolution.first);
  grid.M_axis = linspace(M_range, resolution.second);
  std::size_t total = grid.m_axis.size() * grid.M_axis.size();
  grid.cells.assign(total, SignClass::Undetermined);
  grid.strategies.assign(total, RegionStrategy::MinScan);
  if (total == 0) return grid;
  int nM = static_cast<int>(grid.M_axis.size());
  parallel_for(static_cast<int>(total), threads, [&](int idx) {
    double m = grid.m_axis[static_cast<std::size_t>(idx / nM)];
    double M = grid.M_axis[static_cast<std::size_t>(idx % nM)];
    ClassifyResult r;
    try {
      if (kind == SweepKind::Ode)
        r = classify_point_ode(m, M, T, force != RegionStrategy::ClosedFormOde);
      else
        r = classify_point_ex(m, M, T, q, scan, force);
    } catch (const SingularParameter&) {
      r = {SignClass::Singular, RegionStrategy::MinScan};
    } catch (const SingularMatrix&) {
      r = {SignClass::Singular, RegionStrategy::MinScan};
    } catch (const Error&) {
      r = {SignClass::Undetermined, RegionStrategy::MinScan};
    }
    grid.cells[static_cast<std::size_t>(idx)] = r.cls;
    grid.strategies[static_cast<std::size_t>(idx)] = r.strategy;
  });
  return grid;
}

namespace {

// T0_m(M, c) at a q-bar style diagonal candidate (t -> s^-), for the
// reflection problem.
double reflection_fp_at_candidate(double m, double M, double T, SidedPoint s,
                                  const QuadratureCfg& cfg) {
  double num;
  if (s.value == -T && s.side != Side::Plus)
    num = g_reflection(m, T, exact(-T), after(-T));
  else
    num = g_reflection_diag_minus(m, T, s);
  CellLayout layout = build_layout(T);
  double den = 0.0;
  ProblemParams p{m, M, T};
  if (T <= 1.0) {
    HbarSmallT h(p);
    double s_eval = s.value == -T && s.side != Side::Plus
                        ? h.at(exact(0.0), after(-T))
                        : h.at(exact(0.0), s);
    den = s_eval * integral_g_reflection(m, T, exact(s.value), -T, T);
  } else {
    AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, cfg);
    SidedPoint ss = s.value == -T && s.side != Side::Plus ? after(-T) : s;
    for (int i = 0; i < k.size(); ++i)
      den += k.at(exact(k.layout().cells[static_cast<std::size_t>(i)].label), ss) *
             k.cell_integral(s.value, i);
  }
  if (std::abs(den) <= 1e-300) throw ZeroDenominator("fixed-point candidate");
  return num / den;
}

}  // namespace

double ode_fixed_point_operator(double m, double M, double T, SidedPoint s) {
  ProblemParams p{m, M, T};
  if (!(T > 0.0) || T > 1.0)
    throw DomainError("ode_fixed_point_operator: requires T in (0, 1]");
  double num = 1.0 / std::expm1(m * T);  // lim_{t->s^-} G_m(t, s)
  double den = h_ode_piecewise_smallT(p, exact(0.0), s) * integral_g_ode(p, s.value, 0.0, T);
  if (std::abs(den) <= 1e-300)
    throw ZeroDenominator("ode_fixed_point_operator: denominator vanishes");
  return num / den;
}

std::optional<double> positive_boundary_fixed_point(KernelKind kind, double m, double T,
                                                    const QuadratureCfg& cfg) {
  if (kind != KernelKind::OdePiecewise && kind != KernelKind::ReflectionPiecewise)
    throw DomainError("positive_boundary_fixed_point: kind must be a piecewise kernel");
  std::vector<SidedPoint> candidates;
  if (kind == KernelKind::OdePiecewise) {
    if (T > 1.0) throw DomainError("positive_boundary_fixed_point: ODE path requires T <= 1");
    candidates = {after(0.0), exact(T)};
    for (int i = 1; i < 8; ++i) candidates.push_back(exact(T * i / 8.0));
  } else {
    candidates = {before(0.0), after(0.0), exact(T), exact(-T)};
    long tT = floor_tz(T);
    for (long n = -tT; n <= tT; ++n) {
      if (n == 0) continue;
      double v = static_cast<double>(n);
      if (v > -T) candidates.push_back(before(v));
      if (v < T) candidates.push_back(after(v));
    }
    for (int i = 1; i < 8; ++i) {
      double v = -T + 2.0 * T * i / 8.0;
      if (std::abs(v - std::round(v)) > 1e-9 && std::abs(v) > 1e-9)
        candidates.push_back(exact(v));
    }
  }
  auto op = [&](double M, SidedPoint s) {
    return kind == KernelKind::OdePiecewise ? ode_fixed_point_operator(m, M, T, s)
                                            : reflection_fp_at_candidate(m, M, T, s, cfg);
  };
  std::optional<double> best;
  const double tol = 1e-8;
  for (SidedPoint s : candidates) {
    auto g = [&](double M) { return M - op(M, s); };
    double lo = -m + 1e-5 * std::max(1.0, std::abs(m));
    double hi = std::max(1.0, std::abs(m));
    double glo, ghi;
    try {
      glo = g(lo);
      if (!(glo < 0.0)) continue;  // no bracket from inside the band
      ghi = g(hi);
      int guard = 0;
      while (ghi < 0.0 && ++guard < 24) {
        hi *= 2.0;
        ghi = g(hi);
      }
      if (ghi < 0.0) continue;
      while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
      }
    } catch (const Error&) {
      continue;  // candidate unusable at some probe; others still bound the inf
    }
    double root = 0.5 * (lo + hi);
    if (!best || root < *best) best = root;
  }
  return best;
}

std::vector<ConjectureFinding> conjecture_audit(const RegionGrid& grid, const QuadratureCfg& q,
                                                const ScanCfg& scan, double tol, int threads) {
  int nM = static_cast<int>(grid.M_axis.size());
  int total = static_cast<int>(grid.cells.size());
  std::vector<ConjectureFinding> per_cell(static_cast<std::size_t>(total));
  std::vector<char> active(static_cast<std::size_t>(total), 0);
  parallel_for(total, threads, [&](int idx) {
    if (grid.cells[static_cast<std::size_t>(idx)] != SignClass::Positive) return;
    double m = grid.m_axis[static_cast<std::size_t>(idx / nM)];
    double M = grid.M_axis[static_cast<std::size_t>(idx % nM)];
    ConjectureFinding f;
    f.m = m;
    f.M = M;
    try {
      ProblemParams p{m, M, grid.T};
      AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, q);
      MinScanCandidates cand;
      cand.diagonal = m > 0.0;
      cand.cross = true;
      cand.scan = scan;
      MinScanResult r = min_scan_minimum(k, cand);
      double q_minus = q_bar(k, before(0.0));
      double q_plus = q_bar(k, after(0.0));
      // conjectured argmin side by sign of M; record the smaller side
      f.q0_side = M > 0.0 ? Side::Minus : Side::Plus;
      f.q0 = f.q0_side == Side::Minus ? q_minus : q_plus;
      if ((f.q0_side == Side::Minus ? q_plus : q_minus) < f.q0) {
        f.q0_side = f.q0_side == Side::Minus ? Side::Plus : Side::Minus;
        f.q0 = std::min(q_minus, q_plus);
      }
      f.full_min = r.value;
      f.gap = std::abs(f.full_min - f.q0);
      f.inconsistent = f.full_min < -tol;
      if (f.gap > tol || f.inconsistent) active[static_cast<std::size_t>(idx)] = 1;
      per_cell[static_cast<std::size_t>(idx)] = f;
    } catch (const Error&) {
      // cells that fail to evaluate are not conjecture counterexamples
    }
  });
  std::vector<ConjectureFinding> findings;
  for (int i = 0; i < total; ++i)
    if (active[static_cast<std::size_t>(i)]) findings.push_back(per_cell[static_cast<std::size_t>(i)]);
  return findings;
}

}  // namespace greensign
