#include "greensign/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "greensign/parallel.hpp"
#include "greensign/sign_region.hpp"

namespace greensign {

namespace {

// nodes per unit length; must be integral when the grid has to hit the
// integer breakpoints exactly
double nodes_per_unit(int grid_n, double T) { return grid_n / T; }

void require_aligned_grid(int grid_n, double T) {
  if (floor_tz(T) == 0) return;
  double npu = nodes_per_unit(grid_n, T);
  if (std::abs(npu - std::round(npu)) > 1e-9 * npu)
    throw GridMismatch("grid_n/T must be an integer so the integer breakpoints "
                       "fall on grid nodes");
}

std::vector<double> expand_seed(const std::vector<double>& seed, int n_nodes,
                                const char* name) {
  if (seed.size() == 1) return std::vector<double>(static_cast<std::size_t>(n_nodes), seed[0]);
  if (static_cast<int>(seed.size()) != n_nodes)
    throw GridMismatch(std::string(name) + ": sampled seed does not match the grid size");
  return seed;
}

}  // namespace

KernelTable::KernelTable(const AssembledKernel& kernel, int grid_n, int threads)
    : n_(2 * grid_n + 1), T_(kernel.domain_T()), dx_(kernel.domain_T() / grid_n) {
  require_aligned_grid(grid_n, T_);
  grid_.resize(static_cast<std::size_t>(n_));
  long tT = floor_tz(T_);
  double npu = std::round(nodes_per_unit(grid_n, T_));
  // build nodes so the integer breakpoints are bit-exact integers
  for (int j = 0; j < n_; ++j)
    grid_[static_cast<std::size_t>(j)] = tT >= 1 ? (j - grid_n) / npu : (j - grid_n) * dx_;
  grid_[0] = -T_;
  grid_[static_cast<std::size_t>(n_ - 1)] = T_;
  for (long g = -tT; g <= tT; ++g) {
    int col = grid_n + static_cast<int>(g * npu);
    if (col > 0 && col < n_ - 1) break_cols_.push_back(col);
  }
  if (break_cols_.empty()) break_cols_.push_back(grid_n);  // 0 is always a breakpoint
  left_.resize(static_cast<std::size_t>(n_) * n_);
  right_.resize(static_cast<std::size_t>(n_) * n_);
  parallel_for(n_, threads, [&](int row) {
    double t = grid_[static_cast<std::size_t>(row)];
    // the label weights depend only on t: hoist them out of the column loop
    std::vector<double> w(static_cast<std::size_t>(kernel.size()));
    for (int j = 0; j < kernel.size(); ++j)
      w[static_cast<std::size_t>(j)] = kernel.label_weight(t, j);
    auto eval = [&](SidedPoint s) {
      double value = g_reflection(kernel.params().m, T_, exact(t), s);
      double corr = 0.0;
      for (int j = 0; j < kernel.size(); ++j)
        corr += g_reflection(kernel.params().m, T_,
                             exact(kernel.layout().cells[static_cast<std::size_t>(j)].label), s) *
                w[static_cast<std::size_t>(j)];
      return value - kernel.params().M * corr;
    };
    std::vector<char> is_break(static_cast<std::size_t>(n_), 0);
    for (int col : break_cols_) is_break[static_cast<std::size_t>(col)] = 1;
    for (int col = 0; col < n_; ++col) {
      double s = grid_[static_cast<std::size_t>(col)];
      double lv, rv;
      if (col == 0) {
        rv = eval(after(-T_));
        lv = rv;
      } else if (col == n_ - 1) {
        lv = eval(before(T_));
        rv = lv;
      } else if (s == t || is_break[static_cast<std::size_t>(col)]) {
        lv = eval(before(s));
        rv = eval(after(s));
      } else {
        lv = eval(exact(s));
        rv = lv;
      }
      left_[static_cast<std::size_t>(row) * n_ + col] = lv;
      right_[static_cast<std::size_t>(row) * n_ + col] = rv;
    }
  });
}

int KernelTable::cell_node(int col, Side side) const {
  double s = grid_[static_cast<std::size_t>(col)];
  long g = floor_tz(SidedPoint{s, side});
  double npu = std::round(nodes_per_unit((n_ - 1) / 2, T_));
  return (n_ - 1) / 2 + static_cast<int>(g * npu);
}

std::vector<double> operator_T(const MonotoneProblem& problem, std::span<const double> gamma,
                               const KernelTable& table) {
  int n = table.nodes();
  if (static_cast<int>(gamma.size()) != n)
    throw GridMismatch("operator_T: gamma does not match the table grid");
  const ProblemParams& p = problem.params;
  // integrand values at every column, one per side (they differ only where
  // [s] jumps)
  std::vector<double> rhs_left(static_cast<std::size_t>(n)), rhs_right(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double s = table.grid()[static_cast<std::size_t>(j)];
    double reflected = gamma[static_cast<std::size_t>(table.mirror(j))];
    double first = problem.literal_integrand ? gamma[static_cast<std::size_t>(j)] : reflected;
    auto value = [&](Side side) {
      double cell = gamma[static_cast<std::size_t>(table.cell_node(j, side))];
      return problem.f(s, first, cell) + p.m * reflected + p.M * cell;
    };
    rhs_left[static_cast<std::size_t>(j)] = value(Side::Minus);
    rhs_right[static_cast<std::size_t>(j)] = value(Side::Plus);
  }
  const std::vector<int>& breaks = table.breakpoint_columns();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // panel edges: domain ends, integer columns, and this row's diagonal
    std::vector<int> edges{0, n - 1, k};
    edges.insert(edges.end(), breaks.begin(), breaks.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    double acc = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      int ja = edges[e], jb = edges[e + 1];
      if (jb <= ja) continue;
      acc += 0.5 * table.right(k, ja) * rhs_right[static_cast<std::size_t>(ja)];
      for (int j = ja + 1; j < jb; ++j)
        acc += table.right(k, j) * rhs_right[static_cast<std::size_t>(j)];
      acc += 0.5 * table.left(k, jb) * rhs_left[static_cast<std::size_t>(jb)];
    }
    out[static_cast<std::size_t>(k)] = acc * table.dx();
  }
  return out;
}

IterationTrace monotone_iterate(const MonotoneProblem& problem, int threads) {
  const ProblemParams& p = problem.params;
  p.require_valid_T();
  if (problem.grid_n < 2) throw GridMismatch("monotone_iterate: grid_n must be >= 2");
  require_aligned_grid(problem.grid_n, p.T);
  SignClass cls = classify_point(p.m, p.M, p.T, QuadratureCfg{});
  SignClass wanted = problem.negative_kernel ? SignClass::Negative : SignClass::Positive;
  if (cls != wanted) {
    std::ostringstream os;
    os << "monotone_iterate: kernel at (m, M, T) = (" << p.m << ", " << p.M << ", " << p.T
       << ") classifies " << to_string(cls) << ", needs " << to_string(wanted);
    throw DomainError(os.str());
  }
  int n_nodes = 2 * problem.grid_n + 1;
  std::vector<double> alpha = expand_seed(problem.alpha_seed, n_nodes, "alpha seed");
  std::vector<double> beta = expand_seed(problem.beta_seed, n_nodes, "beta seed");
  for (int j = 0; j < n_nodes; ++j) {
    double lo = problem.negative_kernel ? alpha[static_cast<std::size_t>(j)]
                                        : beta[static_cast<std::size_t>(j)];
    double hi = problem.negative_kernel ? beta[static_cast<std::size_t>(j)]
                                        : alpha[static_cast<std::size_t>(j)];
    if (lo > hi + problem.monotone_slack)
      throw DomainError("monotone_iterate: seeds are not ordered for this kernel sign");
  }
  AssembledKernel kernel = assemble(p, KernelKind::ReflectionFirstOrder, QuadratureCfg{});
  KernelTable table(kernel, problem.grid_n, threads);

  IterationTrace trace;
  trace.grid = table.grid();
  trace.alpha_seq.push_back(alpha);
  trace.beta_seq.push_back(beta);

  auto sup_diff = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
  };
  // largest violation of "next stays on the expected side of cur"
  auto worst_excess = [&](const std::vector<double>& next, const std::vector<double>& cur,
                          bool next_below, int& node) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < next.size(); ++j) {
      double excess = next_below ? next[j] - cur[j] : cur[j] - next[j];
      if (excess > worst) {
        worst = excess;
        node = static_cast<int>(j);
      }
    }
    return worst;
  };

  bool alpha_shrinks = !problem.negative_kernel;  // alpha nonincreasing, beta nondecreasing
  for (int it = 0; it < problem.max_iter; ++it) {
    std::vector<double> alpha_next = operator_T(problem, alpha, table);
    std::vector<double> beta_next = operator_T(problem, beta, table);
    int node = 0;
    double ea = worst_excess(alpha_next, alpha, alpha_shrinks, node);
    if (ea > problem.monotone_slack)
      throw MonotonicityViolation("monotone_iterate: alpha sequence left its monotone "
                                  "order (failed hypothesis or too-coarse grid)",
                                  it + 1, node, ea);
    double eb = worst_excess(beta_next, beta, !alpha_shrinks, node);
    if (eb > problem.monotone_slack)
      throw MonotonicityViolation("monotone_iterate: beta sequence left its monotone "
                                  "order (failed hypothesis or too-coarse grid)",
                                  it + 1, node, eb);
    double eo = alpha_shrinks ? worst_excess(beta_next, alpha_next, true, node)
                              : worst_excess(alpha_next, beta_next, true, node);
    if (eo > problem.monotone_slack)
      throw MonotonicityViolation("monotone_iterate: ordering between alpha and beta "
                                  "broke down",
                                  it + 1, node, eo);
    trace.monotone_ok.push_back(ea <= 0.0 && eb <= 0.0 && eo <= 0.0);
    double step = std::max(sup_diff(alpha_next, alpha), sup_diff(beta_next, beta));
    alpha = std::move(alpha_next);
    beta = std::move(beta_next);
    trace.alpha_seq.push_back(alpha);
    trace.beta_seq.push_back(beta);
    if (step < problem.tol) {
      trace.converged_at = it;
      break;
    }
  }
  trace.final_gap = sup_diff(alpha, beta);
  return trace;
}

namespace {

SolutionAudit check_solution_impl(const Rhs& f, std::span<const double> values, double T,
                                  double slack, bool lower) {
  if (values.size() < 3 || values.size() % 2 == 0)
    throw GridMismatch("solution check: need an odd number of nodes >= 3");
  int n = static_cast<int>(values.size() - 1) / 2;
  require_aligned_grid(n, T);
  double dx = T / n;
  SolutionAudit audit;
  audit.boundary_gap = std::abs(values[0] - values[values.size() - 1]);
  audit.min_residual = std::numeric_limits<double>::infinity();
  for (int j = 1; j < 2 * n; ++j) {
    double t = (j - n) * dx;
    // skip stencils that straddle a nonzero integer, where v([t]) jumps
    double lo = t - dx, hi = t + dx;
    bool crosses = false;
    for (long g = -floor_tz(T); g <= floor_tz(T); ++g) {
      if (g == 0) continue;
      if (lo <= g && g <= hi) crosses = true;
    }
    if (crosses) continue;
    double deriv = (values[static_cast<std::size_t>(j + 1)] -
                    values[static_cast<std::size_t>(j - 1)]) /
                   (2.0 * dx);
    double reflected = values[static_cast<std::size_t>(2 * n - j)];
    long cell = floor_tz(t);
    double npu = std::round(n / T);
    int cell_idx = n + static_cast<int>(cell * (floor_tz(T) == 0 ? 0 : npu));
    double cell_value = values[static_cast<std::size_t>(cell_idx)];
    double rhs = f(t, reflected, cell_value);
    double residual = lower ? deriv - rhs : rhs - deriv;
    audit.min_residual = std::min(audit.min_residual, residual);
    if (residual < -slack) audit.violating_nodes.push_back(j);
  }
  return audit;
}

}  // namespace

SolutionAudit check_lower_solution(const Rhs& f, std::span<const double> alpha, double T,
                                   double slack) {
  return check_solution_impl(f, alpha, T, slack, true);
}

SolutionAudit check_upper_solution(const Rhs& f, std::span<const double> beta, double T,
                                   double slack) {
  return check_solution_impl(f, beta, T, slack, false);
}

Rhs make_builtin_rhs(const std::string& name, double lambda, const ProblemParams& p) {
  if (name == "tanh2")
    return [lambda](double t, double x, double y) { return lambda * std::tanh(t * t - 2.0 * x + y); };
  if (name == "tanh1")
    return [lambda](double t, double x, double y) { return lambda * std::tanh(t - x - y); };
  if (name == "linear-probe") {
    double m = p.m, M = p.M;
    return [m, M](double, double x, double y) { return -m * x - M * y + 1.0; };
  }
  throw DomainError("unknown right-hand side '" + name +
                    "' (expected tanh1, tanh2 or linear-probe)");
}

std::optional<double> builtin_lambda_bound(const std::string& name, const ProblemParams& p) {
  if (name == "tanh2") return std::min(p.m / 2.0, p.M);
  if (name == "tanh1") return std::min(p.m, p.M);
  return std::nullopt;
}

double sample_lipschitz_margin(const Rhs& f, const ProblemParams& p, double lo, double hi,
                               int samples) {
  double margin = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= samples; ++it) {
    double t = -p.T + 2.0 * p.T * it / samples;
    for (int a = 0; a < samples; ++a)
      for (int b = a; b < samples; ++b) {  // x2 <= x1
        double x2 = lo + (hi - lo) * a / (samples - 1.0);
        double x1 = lo + (hi - lo) * b / (samples - 1.0);
        for (int c = 0; c < samples; ++c)
          for (int d = c; d < samples; ++d) {
            double y2 = lo + (hi - lo) * c / (samples - 1.0);
            double y1 = lo + (hi - lo) * d / (samples - 1.0);
            double lhs = f(t, x1, y1) - f(t, x2, y2) + p.m * (x1 - x2) + p.M * (y1 - y2);
            margin = std::min(margin, lhs);
          }
      }
  }
  return margin;
}

}  // namespace greensign
