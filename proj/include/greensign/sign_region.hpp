#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "greensign/assembly.hpp"
#include "greensign/ode_kernels.hpp"

namespace greensign {

enum class SignClass : std::uint8_t {
  Positive = 0,
  Negative = 1,
  SignChanging = 2,
  Singular = 3,
  Undetermined = 4,
};

enum class RegionStrategy : std::uint8_t {
  ClosedFormOde = 0,
  ClosedFormReflectionSmallT = 1,
  MinScan = 2,
  FixedPointScan = 3,
};

const char* to_string(SignClass c);
const char* to_string(RegionStrategy s);

// Open band (M_low, M_high) of constant sign at fixed m.
struct RegionBounds {
  double M_low;
  double M_high;
};

// Positive band of the periodic ODE problem, T in (0,1]:
//   (-m, m/(e^{mT}-1)) for m != 0, (0, 1/T) at m = 0 (continuity limit).
RegionBounds ode_region_boundary(double m, double T);
// Negative band via the symmetry H_{m,M}(t,s) = -H_{-m,-M}(T-t,T-s).
RegionBounds ode_region_boundary_negative(double m, double T);

// Positive band of the reflection problem, T in (0,1], |m| < pi/(4T):
//   (-m, m(-1+cot(mT))/2) for m != 0, (0, 1/(2T)) at m = 0.
// Throws DomainError for |m| >= pi/(4T) (the kernel changes sign there).
RegionBounds reflection_region_boundary_smallT(double m, double T);
RegionBounds reflection_region_boundary_smallT_negative(double m, double T);

// Fixed-point operator
//   T0_m(M, t, s) = Gbar_m(t,s) / sum_i Hbar_{m,M}(label_i, s) C_i(t),
// the per-cell collapsed form of the ratio whose fixed points in M mark the
// sign-region boundary.  A coincident equal-sided pair (v^side, v^side) is
// read as the diagonal limit t -> s^-.  Throws ZeroDenominator.
double fixed_point_operator(double m, double M, double T, SidedPoint t, SidedPoint s,
                            const AssembledKernel& k);

// Scan densities (the candidate structure is prescribed; the density is ours).
struct ScanCfg {
  int t_per_unit = 33;        // t-grid points per unit length, plus sided points
                              // adjacent to every breakpoint
  int diagonal_samples = 65;  // q-bar samples along the diagonal (m > 0 cases)
};

struct MinScanCandidates {
  bool integer_sides = true;  // q-bar(n-), q-bar(n+) at integers in (-T, T)
  bool endpoints = true;      // q-bar(T), q-bar(-T)
  bool diagonal = false;      // q-bar on the interior diagonal grid
  bool cross = false;         // Hbar(t, n+-) over the t-grid
  ScanCfg scan;
};

struct MinScanResult {
  double value = 0.0;
  SidedPoint t, s;  // argmin; for q-bar candidates t encodes the order t = s^-
};

// Sided t-grid used by the fixed-point and cross scans.
std::vector<SidedPoint> scan_t_grid(double T, int per_unit);
// Sided integer s-candidates (n-, n+ inside, endpoints exact).
std::vector<SidedPoint> scan_integer_s(double T);

MinScanResult min_scan_minimum(const AssembledKernel& k, const MinScanCandidates& cand);
MinScanResult min_scan_minimum(const HbarSmallT& k, const MinScanCandidates& cand);

struct ClassifyResult {
  SignClass cls = SignClass::Undetermined;
  RegionStrategy strategy = RegionStrategy::MinScan;
};

// Sign classification of the reflection kernel at one parameter point.
// force = nullopt picks the closed form for T <= 1 and the scan machinery
// otherwise; force = MinScan runs the numeric scan also for T <= 1.
ClassifyResult classify_point_ex(double m, double M, double T, const QuadratureCfg& q,
                                 const ScanCfg& scan = {},
                                 std::optional<RegionStrategy> force = std::nullopt);
SignClass classify_point(double m, double M, double T, const QuadratureCfg& q);

// Sign classification of the periodic ODE kernel (T <= 1).
ClassifyResult classify_point_ode(double m, double M, double T, bool min_scan = true);

enum class SweepKind { Ode, Reflection };

struct RegionGrid {
  std::vector<double> m_axis, M_axis;
  double T = 0.0;
  SweepKind kind = SweepKind::Reflection;
  std::vector<SignClass> cells;            // row-major, index = i_m * |M_axis| + i_M
  std::vector<RegionStrategy> strategies;  // strategy used per cell

  SignClass at(int i_m, int i_M) const {
    return cells[static_cast<std::size_t>(i_m) * M_axis.size() + i_M];
  }
};

// Classifies the full lattice; cells are independent and evaluated
// concurrently, the output is deterministic by cell index.  Per-cell errors
// become Singular (singular parameters/matrices) or Undetermined.
RegionGrid sweep_region(std::pair<double, double> m_range, std::pair<double, double> M_range,
                        std::pair<int, int> resolution, double T, const QuadratureCfg& q,
                        SweepKind kind = SweepKind::Reflection,
                        std::optional<RegionStrategy> force = std::nullopt,
                        const ScanCfg& scan = {}, int threads = 0);

// The ODE analogue of the fixed-point operator at a diagonal candidate
// (t -> s^-), for the verification problem on [0, T], T <= 1:
//   T0_m(M, s) = lim_{t->s^-} G_m(t,s) / [ H_{m,M}(0,s) int_0^T G_m(s,r) dr ].
double ode_fixed_point_operator(double m, double M, double T, SidedPoint s);

// Infimum over the candidate set of the fixed points M = T0_m(M, t, s),
// located by bisection with bracket expansion (tolerance 1e-8 in M).
// kind selects OdePiecewise or ReflectionPiecewise.  nullopt when no
// candidate has a fixed point in the expanded bracket.
std::optional<double> positive_boundary_fixed_point(KernelKind kind, double m, double T,
                                                    const QuadratureCfg& cfg);

// One finding of the conjecture audit at a Positive cell: the minimum over
// the full candidate set against the conjectured q-bar(0-/0+) argmin value.
struct ConjectureFinding {
  double m = 0.0, M = 0.0;
  double full_min = 0.0;
  double q0 = 0.0;
  Side q0_side = Side::Minus;
  double gap = 0.0;
  bool inconsistent = false;  // Positive cell whose candidate minimum is negative
};

// Audits every Positive cell of the grid.  Findings with gap > tol are
// mismatches to report; inconsistent findings are classification failures.
std::vector<ConjectureFinding> conjecture_audit(const RegionGrid& grid, const QuadratureCfg& q,
                                                const ScanCfg& scan, double tol,
                                                int threads = 0);

}  // namespace greensign
