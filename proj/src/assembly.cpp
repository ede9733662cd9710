#include "greensign/assembly.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace greensign {

DenseLU lu_factor(std::vector<double> matrix, int n) {
  DenseLU f;
  f.n = n;
  f.lu = std::move(matrix);
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  double det = 1.0;
  auto at = [&](int i, int j) -> double& { return f.lu[static_cast<std::size_t>(i) * n + j]; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(at(pivot, j), at(col, j));
      std::swap(f.perm[pivot], f.perm[col]);
      det = -det;
    }
    double d = at(col, col);
    det *= d;
    if (d == 0.0) continue;  // det stays zero; inversion would divide by zero
    for (int r = col + 1; r < n; ++r) {
      double factor = at(r, col) / d;
      at(r, col) = factor;
      for (int j = col + 1; j < n; ++j) at(r, j) -= factor * at(col, j);
    }
  }
  f.det = det;
  return f;
}

std::vector<double> lu_invert(const DenseLU& f) {
  int n = f.n;
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  auto lu = [&](int i, int j) { return f.lu[static_cast<std::size_t>(i) * n + j]; };
  std::vector<double> col(n);
  for (int e = 0; e < n; ++e) {
    for (int i = 0; i < n; ++i) col[i] = f.perm[i] == e ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)  // forward, unit lower triangle
      for (int j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (int i = n - 1; i >= 0; --i) {  // backward
      for (int j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
      col[i] /= lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + e] = col[i];
  }
  return inv;
}

namespace {

// numeric branch lookup for quadrature interiors (r strictly inside a piece)
GbarBranch branch_of(double t, double r) {
  if (r < t) return r >= -t ? GbarBranch::East : GbarBranch::South;
  return r >= -t ? GbarBranch::North : GbarBranch::West;
}

double gbar_cell_integral(const ProblemParams& p, double t, const Cell& c,
                          const QuadratureCfg& cfg) {
  if (cfg.mode == QuadratureMode::AnalyticPreferred)
    return integral_g_reflection(p.m, p.T, exact(t), c.lo, c.hi);
  double breaks[2] = {t, -t};
  return integrate_piecewise(
      [&](double r) {
        return g_reflection_branch(p.m, p.T, branch_of(t, r), t, r);
      },
      c.lo, c.hi, breaks, cfg);
}

}  // namespace

AssembledKernel::AssembledKernel(const ProblemParams& p, CellLayout layout,
                                 std::vector<double> A, std::vector<double> A_inv,
                                 double det, double threshold, QuadratureCfg cfg)
    : p_(p),
      layout_(std::move(layout)),
      n_(layout_.size()),
      A_(std::move(A)),
      Ainv_(std::move(A_inv)),
      det_(det),
      threshold_(threshold),
      cfg_(cfg) {}

double AssembledKernel::cell_integral(double t, int i) const {
  return gbar_cell_integral(p_, t, layout_.cells[static_cast<std::size_t>(i)], cfg_);
}

double AssembledKernel::label_weight(double t, int j) const {
  double w = 0.0;
  for (int i = 0; i < n_; ++i) w += a_inv(i, j) * cell_integral(t, i);
  return w;
}

double AssembledKernel::at(SidedPoint t, SidedPoint s) const {
  double value = g_reflection(p_.m, p_.T, t, s);
  double corr = 0.0;
  for (int j = 0; j < n_; ++j)
    corr += g_reflection(p_.m, p_.T, exact(layout_.cells[j].label), s) *
            label_weight(t.value, j);
  return value - p_.M * corr;
}

double AssembledKernel::diag_minus(SidedPoint s) const {
  double value = g_reflection_diag_minus(p_.m, p_.T, s);
  double corr = 0.0;
  for (int j = 0; j < n_; ++j)
    corr += g_reflection(p_.m, p_.T, exact(layout_.cells[j].label), s) *
            label_weight(s.value, j);
  return value - p_.M * corr;
}

double AssembledKernel::integral_s_range(double t, double a, double b) const {
  double value = integral_g_reflection(p_.m, p_.T, exact(t), a, b);
  double corr = 0.0;
  for (int j = 0; j < n_; ++j)
    corr += integral_g_reflection(p_.m, p_.T, exact(layout_.cells[j].label), a, b) *
            label_weight(t, j);
  return value - p_.M * corr;
}

RawAssembly assemble_raw(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg) {
  cfg.validate();
  if (base != KernelKind::ReflectionFirstOrder)
    throw DomainError("assemble: the matrix construction is built over the "
                      "first-order reflection kernel");
  p.require_valid_T();
  if (p.reflection_singular())
    throw SingularParameter("assemble: m = k*pi/T, base kernel singular");
  RawAssembly raw;
  raw.layout = build_layout(p.T);
  int n = raw.layout.size();
  raw.A.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double l = raw.layout.cells[static_cast<std::size_t>(i)].label;
    for (int j = 0; j < n; ++j) {
      double a_lk = gbar_cell_integral(p, l, raw.layout.cells[static_cast<std::size_t>(j)], cfg);
      raw.A[static_cast<std::size_t>(i) * n + j] = p.M * a_lk + (i == j ? 1.0 : 0.0);
    }
  }
  double row_norm_product = 1.0;
  for (int i = 0; i < n; ++i) {
    double sq = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = raw.A[static_cast<std::size_t>(i) * n + j];
      sq += v * v;
    }
    row_norm_product *= std::sqrt(sq);
  }
  raw.threshold = 1e-8 * row_norm_product;
  raw.det = lu_factor(raw.A, n).det;
  return raw;
}

AssembledKernel assemble(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg) {
  RawAssembly raw = assemble_raw(p, base, cfg);
  if (raw.singular()) {
    std::ostringstream os;
    os << "assemble: |det A| = " << std::abs(raw.det) << " below threshold " << raw.threshold
       << "; (m, M) = (" << p.m << ", " << p.M << ") is an approximate eigenvalue pair";
    throw SingularMatrix(os.str(), raw.det, raw.threshold);
  }
  int n = raw.layout.size();
  DenseLU f = lu_factor(raw.A, n);
  std::vector<double> inv = lu_invert(f);
  return AssembledKernel(p, std::move(raw.layout), std::move(raw.A), std::move(inv), f.det,
                         raw.threshold, cfg);
}

double det_A(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg) {
  return assemble_raw(p, base, cfg).det;
}

namespace {

// Uniform face over the small-T closed form and the assembled evaluator.
class HbarAny {
 public:
  HbarAny(const ProblemParams& p, const QuadratureCfg& cfg) {
    if (p.T <= 1.0)
      small_ = std::make_unique<HbarSmallT>(p);
    else
      big_ = std::make_unique<AssembledKernel>(assemble(p, KernelKind::ReflectionFirstOrder, cfg));
  }
  double at(SidedPoint t, SidedPoint s) const {
    return small_ ? small_->at(t, s) : big_->at(t, s);
  }
  double integral_s_range(double t, double a, double b) const {
    return small_ ? small_->integral_s_range(t, a, b) : big_->integral_s_range(t, a, b);
  }

 private:
  std::unique_ptr<HbarSmallT> small_;
  std::unique_ptr<AssembledKernel> big_;
};

}  // namespace

double comparison_residual(const ProblemParams& p0, const ProblemParams& p1, SidedPoint t,
                      SidedPoint s, const QuadratureCfg& cfg) {
  if (p0.T != p1.T) throw DomainError("comparison_residual: kernels must share T");
  HbarAny h0(p0, cfg), h1(p1, cfg);
  double T = p0.T;
  CellLayout layout = build_layout(T);

  // breakpoints in r of H1(t,r) and H0(-r,s): the diagonals of both kernels
  // and every integer cell edge (0 included)
  std::vector<double> breaks{t.value, -t.value, s.value, -s.value, 0.0};
  for (double x : layout.interior_breakpoints()) breaks.push_back(x);

  // a quadrature node can still land exactly on a jump of one factor (the
  // Kronrod rule includes the piece midpoint); the jump set has measure zero,
  // so the one-sided limit is the right value there
  auto at_safe = [](const HbarAny& h, SidedPoint a, SidedPoint b) {
    try {
      return h.at(a, b);
    } catch (const AmbiguousSide&) {
      return h.at(a, b.side == Side::Exact ? after(b.value) : b);
    }
  };
  double i_reflect = integrate_piecewise(
      [&](double r) { return at_safe(h1, t, exact(r)) * at_safe(h0, exact(-r), s); }, -T, T,
      breaks, cfg);

  // int H1(t,r) H0([r],s) dr collapses to exact per-cell integrals of H1
  double i_cells = 0.0;
  for (const Cell& c : layout.cells)
    i_cells += h0.at(exact(c.label), s) * h1.integral_s_range(t.value, c.lo, c.hi);

  double lhs = h0.at(t, s);
  double rhs = h1.at(t, s) + (p1.m - p0.m) * i_reflect + (p1.M - p0.M) * i_cells;
  return lhs - rhs;
}

}  // namespace greensign
