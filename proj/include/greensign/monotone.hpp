#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greensign/assembly.hpp"

namespace greensign {

// Right-hand side f(t, x, y) of v'(t) = f(t, v(-t), v([t])): x receives the
// reflected value v(-t) and y the cell value v([t]).
using Rhs = std::function<double(double, double, double)>;

// One monotone-iteration problem instance.  The caller is responsible for
// the one-sided Lipschitz hypothesis
//   f(t,x1,y1) - f(t,x2,y2) >= -m (x1-x2) - M (y1-y2)
// inside the sector; sample_lipschitz_margin() below spot-checks it.
struct MonotoneProblem {
  Rhs f;
  ProblemParams params;             // (m, M, T) certifying the kernel sign
  std::vector<double> alpha_seed;   // lower solution sampled on the grid (or constant, size 1)
  std::vector<double> beta_seed;    // upper solution
  int grid_n = 256;                 // 2*grid_n + 1 nodes over [-T, T]
  int max_iter = 64;
  double tol = 1e-8;
  double monotone_slack = 1e-9;     // tolerance on ordering violations before aborting
  bool literal_integrand = false;   // f(s, gamma(s), gamma([s])) instead of gamma(-s)
  bool negative_kernel = false;     // dual ordering (alpha <= beta, alpha increasing)
};

struct IterationTrace {
  std::vector<double> grid;
  std::vector<std::vector<double>> alpha_seq, beta_seq;  // [iteration][node], entry 0 = seeds
  // Strict nodewise monotonicity per step (violations within the slack are
  // recorded as false here; violations beyond the slack abort the iteration).
  std::vector<bool> monotone_ok;
  std::optional<int> converged_at;
  double final_gap = 0.0;  // sup-norm of the last alpha - beta
};

// Finite-difference audit of the lower-solution inequality
//   alpha'(t) >= f(t, alpha(-t), alpha([t]))   with alpha(-T) = alpha(T).
struct SolutionAudit {
  std::vector<int> violating_nodes;
  double min_residual = 0.0;   // min over checked nodes of alpha' - f (>= 0 when valid)
  double boundary_gap = 0.0;   // |alpha(-T) - alpha(T)|
  bool valid(double slack = 1e-9) const {
    return violating_nodes.empty() && boundary_gap <= slack;
  }
};

SolutionAudit check_lower_solution(const Rhs& f, std::span<const double> alpha, double T,
                                   double slack = 1e-9);
SolutionAudit check_upper_solution(const Rhs& f, std::span<const double> beta, double T,
                                   double slack = 1e-9);

// Precomputed table of Hbar over the solver grid with one-sided values at
// every column, so the integral operator can split its trapezoid sums at the
// kernel discontinuities (s = t and integer s) exactly.
class KernelTable {
 public:
  KernelTable(const AssembledKernel& kernel, int grid_n, int threads = 0);

  int nodes() const { return n_; }
  double dx() const { return dx_; }
  double T() const { return T_; }
  const std::vector<double>& grid() const { return grid_; }
  double left(int row, int col) const {   // Hbar(t_row, s_col^-)
    return left_[static_cast<std::size_t>(row) * n_ + col];
  }
  double right(int row, int col) const {  // Hbar(t_row, s_col^+)
    return right_[static_cast<std::size_t>(row) * n_ + col];
  }
  const std::vector<int>& breakpoint_columns() const { return break_cols_; }
  int mirror(int col) const { return n_ - 1 - col; }
  // node index of the integer [s] for a sided column
  int cell_node(int col, Side side) const;

 private:
  int n_;
  double T_, dx_;
  std::vector<double> grid_;
  std::vector<double> left_, right_;
  std::vector<int> break_cols_;  // integer columns (interior), ascending
};

// One application of the integral operator
//   (T gamma)(t) = int Hbar(t,s) [ f(s, gamma(-s), gamma([s])) + m gamma(-s)
//                                  + M gamma([s]) ] ds
// by composite trapezoid split at the table's breakpoint columns and at the
// diagonal column of each output row.
std::vector<double> operator_T(const MonotoneProblem& problem, std::span<const double> gamma,
                               const KernelTable& table);

// Runs the full iteration alpha_{n+1} = T alpha_n, beta_{n+1} = T beta_n.
// Requires the kernel classified Positive (Negative with negative_kernel).
// Throws MonotonicityViolation when an ordering violation exceeds the slack.
IterationTrace monotone_iterate(const MonotoneProblem& problem, int threads = 0);

// Named built-in right-hand sides for the CLI and tests:
//   tanh2        : lambda * tanh(t^2 - 2x + y)
//   tanh1        : lambda * tanh(t - x - y)
//   linear-probe : -m x - M y + 1   (unique solution 1/(m+M))
Rhs make_builtin_rhs(const std::string& name, double lambda, const ProblemParams& p);

// Hypothesis-2 bound on lambda for the built-ins (tanh2: min{m/2, M},
// tanh1: min{m, M}); nullopt for linear-probe.
std::optional<double> builtin_lambda_bound(const std::string& name, const ProblemParams& p);

// Worst margin of f(t,x1,y1) - f(t,x2,y2) + m (x1-x2) + M (y1-y2) over a
// sample lattice inside the sector [lo, hi]; negative means the one-sided
// Lipschitz hypothesis fails on the sample.
double sample_lipschitz_margin(const Rhs& f, const ProblemParams& p, double lo, double hi,
                               int samples = 9);

}  // namespace greensign
