#include "greensign/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace greensign {

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureCfg& cfg) {
  cfg.validate();
  if (!(a < b)) return a == b ? 0.0 : -integrate_adaptive(f, b, a, cfg);
  // max_subdivisions bounds the number of bisected intervals, 2^depth.
  int depth = 1;
  while ((1 << depth) < cfg.max_subdivisions && depth < 24) ++depth;
  double error = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, depth, cfg.rel_tol, &error);
  return value;
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breaks, const QuadratureCfg& cfg) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_piecewise(f, b, a, breaks, cfg);
  std::vector<double> pts{a, b};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate_adaptive(f, pts[i], pts[i + 1], cfg);
  return total;
}

}  // namespace greensign
