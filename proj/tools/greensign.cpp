// Command-line front end: evaluate kernels, dump the coupling matrix, sweep
// sign regions, run the monotone solver and execute the invariant suite.
//
// Exit codes:
//   0  success
//   1  invariant-suite failure (check)
//   2  singular parameters (eval)
//   3  singular matrix (matrix)
//   4  sign-classification gate failed (solve)
//   5  monotonicity violation (solve)
//   6  NaN detected in an output

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greensign/checks.hpp"
#include "greensign/io.hpp"
#include "greensign/monotone.hpp"
#include "greensign/ode_kernels.hpp"
#include "greensign/parallel.hpp"
#include "greensign/sign_region.hpp"

namespace {

using namespace greensign;

constexpr int kExitCheckFailed = 1;
constexpr int kExitSingularParameter = 2;
constexpr int kExitSingularMatrix = 3;
constexpr int kExitGateFailed = 4;
constexpr int kExitMonotonicity = 5;
constexpr int kExitNaN = 6;

SidedPoint parse_sided(std::string text) {
  Side side = Side::Exact;
  if (!text.empty() && (text.back() == '+' || text.back() == '-')) {
    side = text.back() == '+' ? Side::Plus : Side::Minus;
    text.pop_back();
  }
  return {std::stod(text), side};
}

// "t=0.5-,s=0.25" style assignments
std::map<std::string, std::string> parse_assignments(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw CLI::ValidationError("cannot open output file " + path);
  return file;
}

int fail_nan(const char* what) {
  std::cerr << "error: NaN detected in " << what << "\n";
  return kExitNaN;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  std::string kernel = "reflection-piecewise";
  double m = 0.0, M = 0.0, T = 1.0;
  std::string line;     // t=<v> or s=<v>
  std::string at;       // t=<v>,s=<v> with optional +/- suffixes
  int samples = 41;
  bool integrate = false;
  std::string output;
};

KernelKind parse_kernel(const std::string& name) {
  if (name == "ode-exp") return KernelKind::OdeExp;
  if (name == "ode-piecewise") return KernelKind::OdePiecewise;
  if (name == "reflection-second-order") return KernelKind::ReflectionSecondOrder;
  if (name == "reflection-first-order") return KernelKind::ReflectionFirstOrder;
  if (name == "reflection-piecewise") return KernelKind::ReflectionPiecewise;
  throw CLI::ValidationError("unknown kernel '" + name + "'");
}

int run_eval(const EvalOptions& opt) {
  KernelKind kind = parse_kernel(opt.kernel);
  ProblemParams p{opt.m, opt.M, opt.T};
  bool reflection_domain = kind == KernelKind::ReflectionSecondOrder ||
                           kind == KernelKind::ReflectionFirstOrder ||
                           kind == KernelKind::ReflectionPiecewise;
  double lo = reflection_domain ? -p.T : 0.0;
  double hi = p.T;

  std::unique_ptr<AssembledKernel> assembled;
  std::unique_ptr<HbarSmallT> small;
  if (kind == KernelKind::ReflectionPiecewise) {
    if (p.T <= 1.0)
      small = std::make_unique<HbarSmallT>(p);
    else
      assembled = std::make_unique<AssembledKernel>(
          assemble(p, KernelKind::ReflectionFirstOrder, QuadratureCfg{}));
  }
  auto value_at = [&](SidedPoint t, SidedPoint s) {
    switch (kind) {
      case KernelKind::OdeExp: return g_ode_exp(p, t, s);
      case KernelKind::OdePiecewise: return h_ode_piecewise_smallT(p, t, s);
      case KernelKind::ReflectionSecondOrder:
        return g_reflection_second_order(p.m, p.T, t.value, s.value);
      case KernelKind::ReflectionFirstOrder: return g_reflection(p.m, p.T, t, s);
      default: return small ? small->at(t, s) : assembled->at(t, s);
    }
  };
  auto integral_over_s = [&](double t) {
    switch (kind) {
      case KernelKind::OdeExp: return integral_g_ode(p, t, 0.0, p.T);
      case KernelKind::OdePiecewise: return integral_h_ode_smallT(p, t);
      case KernelKind::ReflectionFirstOrder:
        return integral_g_reflection(p.m, p.T, exact(t), -p.T, p.T);
      case KernelKind::ReflectionPiecewise:
        return small ? small->integral_s(t) : assembled->integral_s(t);
      default:
        throw DomainError("--integrate is not supported for this kernel");
    }
  };

  std::ofstream file;
  std::ostream& os = open_output(file, opt.output);

  if (!opt.at.empty()) {
    auto kv = parse_assignments(opt.at);
    SidedPoint t = parse_sided(kv.at("t"));
    SidedPoint s = parse_sided(kv.at("s"));
    std::vector<EvalRow> rows{{t, s, value_at(t, s)}};
    if (std::isnan(rows[0].value)) return fail_nan("eval output");
    write_eval_csv(os, rows);
    return 0;
  }

  // line mode: one coordinate fixed, the other sampled (with sided pairs at
  // every breakpoint so jumps are visible in the table)
  std::string line = opt.line.empty() ? "t=0" : opt.line;
  auto kv = parse_assignments(line);
  bool fix_t = kv.count("t") > 0;
  SidedPoint fixed = parse_sided(fix_t ? kv.at("t") : kv.at("s"));

  if (opt.integrate) {
    if (!fix_t) throw CLI::ValidationError("--integrate expects --line t=<value>");
    double v = integral_over_s(fixed.value);
    if (std::isnan(v)) return fail_nan("integral");
    os << "t,integral\n" << format_float(fixed.value) << ',' << format_float(v) << "\n";
    return 0;
  }

  std::vector<SidedPoint> sweep;
  int n = std::max(2, opt.samples);
  for (int i = 0; i < n; ++i) {
    double v = lo + (hi - lo) * i / (n - 1);
    if (std::abs(v - std::round(v)) < 1e-12 && v != lo && v != hi) continue;
    if (v == fixed.value) continue;
    sweep.push_back(exact(v));
  }
  std::vector<double> breaks{fixed.value};
  for (long g = reflection_domain ? -floor_tz(p.T) : 0; g <= floor_tz(p.T); ++g)
    breaks.push_back(static_cast<double>(g));
  if (reflection_domain) breaks.push_back(-fixed.value);
  for (double b : breaks) {
    if (b > lo) sweep.push_back(before(b));
    if (b < hi) sweep.push_back(after(b));
  }
  std::sort(sweep.begin(), sweep.end(), [](SidedPoint a, SidedPoint b) {
    if (a.value != b.value) return a.value < b.value;
    return static_cast<int>(a.side) < static_cast<int>(b.side);
  });

  std::vector<EvalRow> rows;
  for (SidedPoint x : sweep) {
    SidedPoint t = fix_t ? fixed : x;
    SidedPoint s = fix_t ? x : fixed;
    try {
      rows.push_back({t, s, value_at(t, s)});
    } catch (const AmbiguousSide&) {
      continue;  // unresolvable corner sample; the sided neighbors cover it
    } catch (const DomainError&) {
      continue;
    }
  }
  for (const EvalRow& r : rows)
    if (std::isnan(r.value)) return fail_nan("eval output");
  write_eval_csv(os, rows);
  return 0;
}

// ---------------------------------------------------------------------------
// matrix

int run_matrix(double m, double M, double T, bool as_json, const std::string& output) {
  ProblemParams p{m, M, T};
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  RawAssembly raw = assemble_raw(p, KernelKind::ReflectionFirstOrder, QuadratureCfg{});
  for (double v : raw.A)
    if (std::isnan(v)) return fail_nan("matrix entries");
  if (std::isnan(raw.det)) return fail_nan("determinant");
  if (raw.singular()) {
    int n = raw.layout.size();
    os << "A (" << n << "x" << n << "):\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        os << (j ? " " : "  ") << format_float(raw.A[static_cast<std::size_t>(i) * n + j]);
      os << '\n';
    }
    os << "det = " << format_float(raw.det) << '\n';
    std::cerr << "error: |det A| = " << std::abs(raw.det) << " is below the singularity "
              << "threshold " << raw.threshold << "; (m, M) is an approximate eigenvalue pair\n";
    return kExitSingularMatrix;
  }
  AssembledKernel k = assemble(p, KernelKind::ReflectionFirstOrder, QuadratureCfg{});
  if (as_json)
    write_matrix_json(os, k);
  else
    write_matrix_text(os, k);
  return 0;
}

// ---------------------------------------------------------------------------
// region

struct RegionOptions {
  std::string kernel = "reflection-piecewise";
  double m_lo = -0.7, m_hi = 0.7, M_lo = -1.0, M_hi = 1.0;
  int res_m = 128, res_M = 128;
  double T = 1.0;
  std::string strategy = "auto";
  std::string format = "csv";
  bool boundary = false;
  std::string output;
  int threads = 0;
};

int run_region(const RegionOptions& opt) {
  SweepKind kind = parse_kernel(opt.kernel) == KernelKind::OdePiecewise ? SweepKind::Ode
                                                                        : SweepKind::Reflection;
  std::optional<RegionStrategy> force;
  if (opt.strategy == "min-scan") force = RegionStrategy::MinScan;
  else if (opt.strategy == "closed-form")
    force = kind == SweepKind::Ode ? RegionStrategy::ClosedFormOde
                                   : RegionStrategy::ClosedFormReflectionSmallT;
  else if (opt.strategy != "auto")
    throw CLI::ValidationError("--strategy must be auto, closed-form or min-scan");

  RegionGrid grid = sweep_region({opt.m_lo, opt.m_hi}, {opt.M_lo, opt.M_hi},
                                 {opt.res_m, opt.res_M}, opt.T, QuadratureCfg{}, kind, force,
                                 ScanCfg{}, opt.threads);
  std::ofstream file;
  std::ostream& os = open_output(file, opt.output);
  if (opt.format == "json")
    write_region_json(os, grid);
  else
    write_region_csv(os, grid);

  if (opt.boundary && opt.T <= 1.0) {
    std::vector<BoundarySample> samples;
    for (double m : grid.m_axis) {
      try {
        RegionBounds pos = kind == SweepKind::Ode ? ode_region_boundary(m, opt.T)
                                                  : reflection_region_boundary_smallT(m, opt.T);
        samples.push_back({m, pos.M_low, pos.M_high, "positive"});
        RegionBounds neg = kind == SweepKind::Ode
                               ? ode_region_boundary_negative(m, opt.T)
                               : reflection_region_boundary_smallT_negative(m, opt.T);
        samples.push_back({m, neg.M_low, neg.M_high, "negative"});
      } catch (const DomainError&) {
        continue;  // outside the closed-form band
      }
    }
    std::string path = opt.output.empty() ? "boundary.csv" : opt.output + ".boundary.csv";
    std::ofstream bf(path);
    write_boundary_csv(bf, samples);
    std::cerr << "boundary polylines written to " << path << "\n";
  }

  std::size_t undet = 0, singular = 0;
  for (SignClass c : grid.cells) {
    undet += c == SignClass::Undetermined;
    singular += c == SignClass::Singular;
  }
  std::cerr << "cells=" << grid.cells.size() << " singular=" << singular
            << " undetermined=" << undet << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string f = "tanh1";
  double lambda = 0.2;
  double m = 0.21, M = 0.2, T = 1.6;
  int n1 = 256;
  int iters = 10;
  double tol = 1e-8;
  std::vector<double> alpha0, beta0;  // optional constant seeds
  bool dual = false;
  bool literal = false;
  std::string format = "csv";
  std::string output;
  int threads = 0;
};

int run_solve(const SolveOptions& opt) {
  ProblemParams p{opt.m, opt.M, opt.T};
  SignClass cls = classify_point(p.m, p.M, p.T, QuadratureCfg{});
  SignClass wanted = opt.dual ? SignClass::Negative : SignClass::Positive;
  if (cls != wanted) {
    std::cerr << "error: kernel classifies " << to_string(cls) << " at (m, M, T) = (" << p.m
              << ", " << p.M << ", " << p.T << "), the " << (opt.dual ? "dual " : "")
              << "monotone method needs " << to_string(wanted) << "\n";
    return kExitGateFailed;
  }
  if (auto bound = builtin_lambda_bound(opt.f, p); bound && opt.lambda > *bound)
    std::cerr << "warning: lambda = " << opt.lambda << " exceeds the one-sided Lipschitz "
              << "bound min-rule value " << *bound << " for '" << opt.f
              << "'; the hypothesis of the monotone theorem may fail\n";

  MonotoneProblem problem;
  problem.f = make_builtin_rhs(opt.f, opt.lambda, p);
  problem.params = p;
  problem.grid_n = opt.n1;
  problem.max_iter = opt.iters;
  problem.tol = opt.tol;
  problem.literal_integrand = opt.literal;
  problem.negative_kernel = opt.dual;
  double default_alpha = opt.f == "tanh2" ? 1.0
                         : opt.f == "tanh1" ? opt.T / 2.0
                                            : 2.0 / (p.m + p.M);
  double default_beta = opt.f == "linear-probe" ? 0.0 : -default_alpha;
  problem.alpha_seed = opt.alpha0.empty() ? std::vector<double>{default_alpha} : opt.alpha0;
  problem.beta_seed = opt.beta0.empty() ? std::vector<double>{default_beta} : opt.beta0;

  IterationTrace trace;
  try {
    trace = monotone_iterate(problem, opt.threads);
  } catch (const MonotonicityViolation& e) {
    std::cerr << "error: " << e.what() << " (iteration " << e.iteration << ", node " << e.node
              << ", excess " << e.excess << ")\n";
    return kExitMonotonicity;
  }
  for (const auto& seq : {trace.alpha_seq, trace.beta_seq})
    for (const auto& row : seq)
      for (double v : row)
        if (std::isnan(v)) return fail_nan("iteration trace");

  std::ofstream file;
  std::ostream& os = open_output(file, opt.output);
  if (opt.format == "json")
    write_trace_json(os, trace);
  else
    write_trace_csv(os, trace);
  std::cerr << "iterations=" << trace.alpha_seq.size() - 1 << " final_gap=" << trace.final_gap
            << " converged_at="
            << (trace.converged_at ? std::to_string(*trace.converged_at) : std::string("-"))
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// check

int run_check(std::uint64_t seed, const std::string& at_text) {
  std::optional<ProblemParams> at;
  if (!at_text.empty()) {
    auto kv = parse_assignments(at_text);
    ProblemParams p;
    p.m = std::stod(kv.at("m"));
    p.M = std::stod(kv.at("M"));
    p.T = std::stod(kv.at("T"));
    at = p;
  }
  CheckReport report = run_check_suite(seed, at, QuadratureCfg{});
  for (const CheckResult& r : report.results) {
    std::cout << (r.passed ? "[ ok ] " : "[FAIL] ") << r.name << "  worst=" << r.worst
              << "  tol=" << r.tolerance;
    if (!r.note.empty()) std::cout << "  at " << r.note;
    std::cout << "\n";
  }
  return report.all_passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green's functions of periodic problems with reflection and piecewise "
               "constant arguments: evaluation, sign regions, monotone iteration"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "evaluate a kernel along a line or at a point");
  eval->add_option("--kernel", eval_opt.kernel, "ode-exp | ode-piecewise | "
                   "reflection-second-order | reflection-first-order | reflection-piecewise");
  eval->add_option("-m", eval_opt.m, "reflection/identity coefficient");
  eval->add_option("-M", eval_opt.M, "piecewise-argument coefficient");
  eval->add_option("-T", eval_opt.T, "half-length of the interval");
  eval->add_option("--line", eval_opt.line, "t=<v> or s=<v>: fix one coordinate");
  eval->add_option("--at", eval_opt.at, "t=<v[+-]>,s=<v[+-]>: single sided evaluation");
  eval->add_option("--samples", eval_opt.samples, "samples along the free coordinate");
  eval->add_flag("--integrate", eval_opt.integrate, "print the integral over s instead");
  eval->add_option("-o,--out", eval_opt.output, "output file (default stdout)");

  double mat_m = 0.21, mat_M = 0.2, mat_T = 1.6;
  bool mat_json = false;
  std::string mat_out;
  auto* matrix = app.add_subcommand("matrix", "dump A, A^-1 and det A");
  matrix->add_option("-m", mat_m, "");
  matrix->add_option("-M", mat_M, "");
  matrix->add_option("-T", mat_T, "");
  matrix->add_flag("--json", mat_json, "JSON output");
  matrix->add_option("-o,--out", mat_out, "output file");

  RegionOptions region_opt;
  auto* region = app.add_subcommand("region", "sweep an (m, M) rectangle and classify signs");
  region->add_option("--kernel", region_opt.kernel, "ode-piecewise | reflection-piecewise");
  region->add_option("--m-min", region_opt.m_lo, "");
  region->add_option("--m-max", region_opt.m_hi, "");
  region->add_option("--M-min", region_opt.M_lo, "");
  region->add_option("--M-max", region_opt.M_hi, "");
  region->add_option("--res-m", region_opt.res_m, "lattice points along m");
  region->add_option("--res-M", region_opt.res_M, "lattice points along M");
  region->add_option("-T", region_opt.T, "");
  region->add_option("--strategy", region_opt.strategy, "auto | closed-form | min-scan");
  region->add_option("--format", region_opt.format, "csv | json");
  region->add_flag("--boundary", region_opt.boundary, "also emit closed-form boundary polylines");
  region->add_option("-o,--out", region_opt.output, "output file");
  region->add_option("--threads", region_opt.threads, "worker threads (default: machine)");

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "run the monotone lower/upper-solution iteration");
  solve->add_option("--f", solve_opt.f, "tanh1 | tanh2 | linear-probe");
  solve->add_option("--lambda", solve_opt.lambda, "scale of the built-in right-hand side");
  solve->add_option("-m", solve_opt.m, "");
  solve->add_option("-M", solve_opt.M, "");
  solve->add_option("-T", solve_opt.T, "");
  solve->add_option("--n1", solve_opt.n1, "half node count (2 n1 + 1 nodes)");
  solve->add_option("--iters", solve_opt.iters, "iteration count");
  solve->add_option("--tol", solve_opt.tol, "sup-norm convergence tolerance");
  solve->add_option("--alpha0", solve_opt.alpha0, "constant lower-solution seed");
  solve->add_option("--beta0", solve_opt.beta0, "constant upper-solution seed");
  solve->add_flag("--dual", solve_opt.dual, "negative-kernel (dual) variant");
  solve->add_flag("--literal-integrand", solve_opt.literal,
                  "use f(s, gamma(s), gamma([s])) in the integral operator");
  solve->add_option("--format", solve_opt.format, "csv | json");
  solve->add_option("-o,--out", solve_opt.output, "trace output file");
  solve->add_option("--threads", solve_opt.threads, "");

  std::uint64_t seed = 20240901;
  std::string check_at;
  auto* check = app.add_subcommand("check", "run the cross-module invariant suite");
  check->add_option("--seed", seed, "RNG seed for the random samples");
  check->add_option("--at", check_at, "m=<v>,M=<v>,T=<v>: run at one parameter point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(eval_opt);
    if (*matrix) return run_matrix(mat_m, mat_M, mat_T, mat_json, mat_out);
    if (*region) return run_region(region_opt);
    if (*solve) return run_solve(solve_opt);
    if (*check) return run_check(seed, check_at);
  } catch (const SingularParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingularParameter;
  } catch (const SingularMatrix& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingularMatrix;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
