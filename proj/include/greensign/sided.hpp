#pragma once

#include "greensign/errors.hpp"

namespace greensign {

// Approach side of a one-sided limit.
enum class Side { Minus, Exact, Plus };

// A real coordinate paired with the side it is approached from, making
// one-sided limits first-class values.  Branches of piecewise kernels are
// selected from the side information exactly; there are no epsilon offsets.
struct SidedPoint {
  double value = 0.0;
  Side side = Side::Exact;
};

constexpr SidedPoint exact(double v) { return {v, Side::Exact}; }
constexpr SidedPoint before(double v) { return {v, Side::Minus}; }  // v^-
constexpr SidedPoint after(double v) { return {v, Side::Plus}; }    // v^+

const char* side_name(Side s);

// -x^+ = (-x)^-, -x^- = (-x)^+
constexpr SidedPoint negate(SidedPoint p) {
  Side s = p.side == Side::Minus ? Side::Plus
           : p.side == Side::Plus ? Side::Minus
                                  : Side::Exact;
  return {-p.value, s};
}

enum class Order { Less, Equal, Greater, Ambiguous };

// Lexicographic order on (value, side) with Minus < Exact < Plus.
// Equal only holds for two Exact points of the same value; two coincident
// limits taken from the same side cannot be ordered.
Order sided_order(SidedPoint a, SidedPoint b);

// Truncation toward zero, right-closed on negatives:
//   [t] = n   for t in [n, n+1),   n >= 0,
//   [t] = -n  for t in (-n-1, -n], n >= 0.
// In particular [t] = 0 on (-1, 1).
long floor_tz(double t);

// Sided variant: the side moves the result across the jump at nonzero
// integers ([n^-] = n-1 for n >= 1, [n^+] = n+1 for n <= -1).
long floor_tz(SidedPoint t);

}  // namespace greensign
