#pragma once

#include <vector>

#include "greensign/sided.hpp"

namespace greensign {

// One cell of the piecewise-constant argument: the maximal interval where
// [s] equals the label.  Endpoint conventions follow the solution space:
// [-T, [-T]] for the left end, (k-1, k] for negative k, (-1, 1) clipped to
// the domain for 0, [k, k+1) for positive k, [[T], T] for the right end.
struct Cell {
  int label;
  double lo;
  double hi;
};

// Ordered breakpoint structure of [.] on [-T, T].  For T <= 1 the layout
// collapses to the single cell (-T, T) with label 0.  When T is an integer
// the zero-length end cells are dropped and the label set shrinks.
struct CellLayout {
  double T = 0.0;
  std::vector<Cell> cells;

  int size() const { return static_cast<int>(cells.size()); }
  int index_of_label(int label) const;
  // Cell index containing a sided coordinate (integer-T endpoints map to the
  // surviving end cell).
  int cell_containing(SidedPoint s) const;
  // Interior breakpoints (cell edges strictly inside (-T, T)).
  std::vector<double> interior_breakpoints() const;
};

// Throws DomainError on T <= 0.
CellLayout build_layout(double T);

}  // namespace greensign
