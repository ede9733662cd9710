#include "greensign/layout.hpp"

#include <algorithm>
#include <cmath>

namespace greensign {

int CellLayout::index_of_label(int label) const {
  for (int i = 0; i < size(); ++i)
    if (cells[i].label == label) return i;
  return -1;
}

int CellLayout::cell_containing(SidedPoint s) const {
  long l = floor_tz(s);
  int idx = index_of_label(static_cast<int>(l));
  if (idx >= 0) return idx;
  // integer-T endpoint whose zero-length cell was dropped
  return index_of_label(static_cast<int>(l > 0 ? l - 1 : l + 1));
}

std::vector<double> CellLayout::interior_breakpoints() const {
  std::vector<double> pts;
  for (const Cell& c : cells) {
    if (c.lo > -T && c.lo < T) pts.push_back(c.lo);
    if (c.hi > -T && c.hi < T) pts.push_back(c.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

CellLayout build_layout(double T) {
  if (!(T > 0.0)) throw DomainError("build_layout: T must be positive");
  CellLayout layout;
  layout.T = T;
  long tT = floor_tz(T);
  if (tT == 0) {
    layout.cells.push_back({0, -T, T});
    return layout;
  }
  for (long k = -tT; k <= tT; ++k) {
    double lo, hi;
    if (k == -tT) {
      lo = -T;
      hi = static_cast<double>(-tT);
    } else if (k == tT) {
      lo = static_cast<double>(tT);
      hi = T;
    } else if (k == 0) {
      lo = -1.0;
      hi = 1.0;
    } else if (k < 0) {
      lo = static_cast<double>(k - 1);
      hi = static_cast<double>(k);
    } else {
      lo = static_cast<double>(k);
      hi = static_cast<double>(k + 1);
    }
    if (hi - lo > 0.0) layout.cells.push_back({static_cast<int>(k), lo, hi});
  }
  return layout;
}

}  // namespace greensign
