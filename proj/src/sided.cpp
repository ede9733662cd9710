#include "greensign/sided.hpp"

#include <cmath>

namespace greensign {

const char* side_name(Side s) {
  switch (s) {
    case Side::Minus: return "minus";
    case Side::Plus: return "plus";
    default: return "exact";
  }
}

namespace {
int side_rank(Side s) {
  switch (s) {
    case Side::Minus: return 0;
    case Side::Exact: return 1;
    default: return 2;
  }
}
}  // namespace

Order sided_order(SidedPoint a, SidedPoint b) {
  if (a.value < b.value) return Order::Less;
  if (a.value > b.value) return Order::Greater;
  int ra = side_rank(a.side);
  int rb = side_rank(b.side);
  if (ra < rb) return Order::Less;
  if (ra > rb) return Order::Greater;
  return a.side == Side::Exact ? Order::Equal : Order::Ambiguous;
}

long floor_tz(double t) {
  return static_cast<long>(std::trunc(t));
}

long floor_tz(SidedPoint t) {
  double v = t.value;
  if (v == std::trunc(v)) {
    long n = static_cast<long>(v);
    if (n > 0 && t.side == Side::Minus) return n - 1;
    if (n < 0 && t.side == Side::Plus) return n + 1;
    return n;
  }
  return floor_tz(v);
}

}  // namespace greensign
