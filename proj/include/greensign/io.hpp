#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "greensign/monotone.hpp"
#include "greensign/sign_region.hpp"

namespace greensign {

// Floats print with 17 significant digits ('.' decimal, no locale) so they
// round-trip exactly.
std::string format_float(double v);

// RegionGrid, CSV: header "m,M,class", one row per cell.
void write_region_csv(std::ostream& os, const RegionGrid& grid);
// RegionGrid, JSON: axes plus row-major class codes (legend included).
void write_region_json(std::ostream& os, const RegionGrid& grid);

// IterationTrace, CSV: header "iter,t,alpha,beta".
void write_trace_csv(std::ostream& os, const IterationTrace& trace);
void write_trace_json(std::ostream& os, const IterationTrace& trace);

// Matrix dump: {"size":n,"A":[[...]],"A_inv":[[...]],"det":x}
void write_matrix_json(std::ostream& os, const AssembledKernel& k);
void write_matrix_text(std::ostream& os, const AssembledKernel& k);

// Sampled kernel evaluations, CSV: header "t,t_side,s,s_side,value".
struct EvalRow {
  SidedPoint t, s;
  double value;
};
void write_eval_csv(std::ostream& os, const std::vector<EvalRow>& rows);

// Closed-form boundary polylines for --boundary output, CSV:
// "m,M_low,M_high,band".
struct BoundarySample {
  double m, M_low, M_high;
  const char* band;  // "positive" / "negative"
};
void write_boundary_csv(std::ostream& os, const std::vector<BoundarySample>& rows);

}  // namespace greensign
