#pragma once

#include <vector>

#include "greensign/layout.hpp"
#include "greensign/params.hpp"
#include "greensign/quadrature.hpp"
#include "greensign/reflection_kernels.hpp"

namespace greensign {

// General-T evaluator of the reflection piecewise kernel,
//
//   Hbar_{m,M}(t,s) = Gbar_m(t,s)
//                     - M sum_j sum_i Gbar_m(j,s) ainv_{ij} C_i(t),
//
// where C_i(t) = integral of Gbar_m(t, r) over cell i, and ainv are the
// entries of A^{-1} with A = M [a_{l,k}] + I, a_{l,k} = integral of
// Gbar_m(l, s) over cell k.  The indicator structure of the alpha-functions
// is exploited so every r-integral collapses to one cell.
class AssembledKernel {
 public:
  AssembledKernel(const ProblemParams& p, CellLayout layout, std::vector<double> A,
                  std::vector<double> A_inv, double det, double threshold,
                  QuadratureCfg cfg);

  const ProblemParams& params() const { return p_; }
  const CellLayout& layout() const { return layout_; }
  int size() const { return n_; }
  double a(int i, int j) const { return A_[static_cast<std::size_t>(i) * n_ + j]; }
  double a_inv(int i, int j) const { return Ainv_[static_cast<std::size_t>(i) * n_ + j]; }
  double det() const { return det_; }
  // 1e-8 times the product of row norms: below this |det A| declares the
  // parameter pair an approximate eigenvalue.
  double singular_threshold() const { return threshold_; }
  double domain_T() const { return p_.T; }

  double at(SidedPoint t, SidedPoint s) const;
  double diag_minus(SidedPoint s) const;  // lim_{t->s^-} Hbar(t,s)
  // C_i(t), honoring the quadrature mode the kernel was assembled with.
  double cell_integral(double t, int i) const;
  // sum_i ainv_{ij} C_i(t): the weight multiplying Gbar_m(j, s).
  double label_weight(double t, int j) const;
  // Integral of s -> Hbar(t, s) over [a, b] from exact pieces.
  double integral_s_range(double t, double a, double b) const;
  double integral_s(double t) const { return integral_s_range(t, -p_.T, p_.T); }

 private:
  ProblemParams p_;
  CellLayout layout_;
  int n_;
  std::vector<double> A_, Ainv_;
  double det_, threshold_;
  QuadratureCfg cfg_;
};

// Matrix A with its determinant, before inversion; usable even when A is
// (near) singular.
struct RawAssembly {
  CellLayout layout;
  std::vector<double> A;  // row-major
  double det = 0.0;
  double threshold = 0.0;  // 1e-8 * product of row norms
  bool singular() const { return std::abs(det) < threshold; }
};
RawAssembly assemble_raw(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg);

// Builds A for the given base kernel (only ReflectionFirstOrder is a valid
// base of this construction), inverts it by partial-pivoting elimination and
// returns the evaluator.  Throws SingularParameter when the base kernel does
// not exist at p, SingularMatrix when |det A| < threshold.
AssembledKernel assemble(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg);

// Determinant of A only; reported even when it is (near) zero.
double det_A(const ProblemParams& p, KernelKind base, const QuadratureCfg& cfg);

// Residual of the comparison relation between two kernels sharing T:
//
//   H_0(t,s) - [ H_1(t,s) + (m1-m0) int H_1(t,r) H_0(-r,s) dr
//                         + (M1-M0) int H_1(t,r) H_0([r],s) dr ].
//
// Both kernels are evaluated through the closed form for T <= 1 and through
// assembly otherwise.
double comparison_residual(const ProblemParams& p0, const ProblemParams& p1, SidedPoint t,
                      SidedPoint s, const QuadratureCfg& cfg);

// Dense partial-pivoting LU used by the assembly (exposed for tests).
struct DenseLU {
  int n = 0;
  std::vector<double> lu;
  std::vector<int> perm;
  double det = 0.0;
};
DenseLU lu_factor(std::vector<double> matrix, int n);
std::vector<double> lu_invert(const DenseLU& f);

}  // namespace greensign
