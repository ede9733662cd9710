#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "greensign/quadrature.hpp"
#include "greensign/reflection_kernels.hpp"

using namespace greensign;

namespace {

const QuadratureCfg kQuad;

// Independent construction of Gbar through the second-order kernel:
// m G_m(t,-s) - dG_m/ds(t,s), with the derivative taken analytically from
// the cosine branches.  This is the oracle the four-branch form must match.
double gbar_oracle(double m, double T, double t, double s, bool s_below_t) {
  double g_reflected = g_reflection_second_order(m, T, t, -s);
  double dg_ds = s_below_t ? -std::sin(m * (T + s - t)) / (2.0 * std::sin(m * T))
                           : std::sin(m * (T - s + t)) / (2.0 * std::sin(m * T));
  return m * g_reflected - dg_ds;
}

}  // namespace

TEST_CASE("second-order kernel: value and symmetries") {
  double m = std::numbers::pi / 4.0, T = 1.0;
  CHECK(g_reflection_second_order(m, T, 0.0, 0.0) ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-T, T);
  for (int i = 0; i < 200; ++i) {
    double t = u(rng), s = u(rng);
    double v = g_reflection_second_order(0.9, T, t, s);
    CHECK(v == doctest::Approx(g_reflection_second_order(0.9, T, s, t)).epsilon(1e-13));
    CHECK(v == doctest::Approx(g_reflection_second_order(0.9, T, -t, -s)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(g_reflection_second_order(std::numbers::pi, 1.0, 0.1, 0.2),
                  SingularParameter);
  CHECK_THROWS_AS(g_reflection_second_order(0.0, 1.0, 0.1, 0.2), SingularParameter);
}

TEST_CASE("g_reflection matches the m G(t,-s) - dG/ds construction") {
  std::mt19937_64 rng(5);
  for (double m : {0.3, -0.8, 1.4}) {
    double T = 1.0;
    std::uniform_real_distribution<double> u(-T, T);
    for (int i = 0; i < 300; ++i) {
      double t = u(rng), s = u(rng);
      if (std::abs(t - s) < 1e-6 || std::abs(t + s) < 1e-6) continue;
      double mine = g_reflection(m, T, exact(t), exact(s));
      CHECK(mine == doctest::Approx(gbar_oracle(m, T, t, s, s < t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("g_reflection frozen branch value at the origin") {
  // lim_{s->0^+} Gbar(0, s) = (cos(mT) - sin(mT)) / (2 sin(mT))
  double m = 0.2, T = 1.0;
  double expected = (std::cos(0.2) - std::sin(0.2)) / (2.0 * std::sin(0.2));
  CHECK(expected == doctest::Approx(1.9665774377934468).epsilon(1e-15));
  CHECK(g_reflection(m, T, exact(0.0), after(0.0)) == doctest::Approx(expected).epsilon(1e-15));
  // and the kernel vanishes at the origin exactly when mT = pi/4
  double mc = std::numbers::pi / 4.0;
  CHECK(std::abs(g_reflection(mc, T, exact(0.0), after(0.0))) < 1e-15);
}

TEST_CASE("g_reflection jump laws") {
  double T = 1.0;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (double m : {0.2, -0.6, 2.0}) {
    for (int i = 0; i < 50; ++i) {
      double t = u(rng);
      if (std::abs(t) < 1e-3) continue;
      double js = g_reflection(m, T, exact(t), before(t)) - g_reflection(m, T, exact(t), after(t));
      double jt = g_reflection(m, T, after(t), exact(t)) - g_reflection(m, T, before(t), exact(t));
      CHECK(js == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(jt == doctest::Approx(1.0).epsilon(1e-12));
    }
    // jump at the corner t = 0 via sided pairs
    double j0 = g_reflection(m, T, exact(0.0), before(0.0)) -
                g_reflection(m, T, exact(0.0), after(0.0));
    CHECK(j0 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("g_reflection is continuous across s = -t and Exact is legal there") {
  double m = 0.7, T = 1.0;
  for (double t : {0.3, -0.55}) {
    double v = g_reflection(m, T, exact(t), exact(-t));
    CHECK(v == doctest::Approx(g_reflection(m, T, exact(t), before(-t))).epsilon(1e-9));
    CHECK(v == doctest::Approx(g_reflection(m, T, exact(t), after(-t))).epsilon(1e-9));
  }
}

TEST_CASE("g_reflection side handling errors") {
  CHECK_THROWS_AS(g_reflection(0.5, 1.0, exact(0.3), exact(0.3)), AmbiguousSide);
  CHECK_THROWS_AS(g_reflection(0.5, 1.0, before(0.3), before(0.3)), AmbiguousSide);
  CHECK_THROWS_AS(g_reflection(0.5, 1.0, exact(1.2), exact(0.0)), DomainError);
  CHECK_THROWS_AS(g_reflection(0.0, 1.0, exact(0.1), exact(0.3)), SingularParameter);
  CHECK_THROWS_AS(g_reflection(std::numbers::pi, 1.0, exact(0.1), exact(0.3)),
                  SingularParameter);
}

TEST_CASE("g_reflection defining equation dGbar/dt + m Gbar(-t,s) = 0") {
  const double h = 1e-6;
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (double m : {0.25, -1.1}) {
    int done = 0;
    while (done < 40) {
      double t = u(rng), s = u(rng);
      if (std::abs(t - s) < 0.01 || std::abs(t + s) < 0.01 || std::abs(t) < 0.01) continue;
      ++done;
      double deriv = (g_reflection(m, 1.0, exact(t + h), exact(s)) -
                      g_reflection(m, 1.0, exact(t - h), exact(s))) /
                     (2 * h);
      CHECK(std::abs(deriv + m * g_reflection(m, 1.0, exact(-t), exact(s))) < 1e-6);
    }
  }
}

TEST_CASE("integral_g_reflection: full interval gives 1/m, pieces match quadrature") {
  std::mt19937_64 rng(21);
  for (double m : {0.2, -0.45, 1.7}) {
    for (double T : {1.0, 1.6}) {
      std::uniform_real_distribution<double> u(-T, T);
      for (double t : {0.0, 0.4, -1.2 * T / 1.6}) {
        CHECK(integral_g_reflection(m, T, exact(t), -T, T) ==
              doctest::Approx(1.0 / m).epsilon(1e-12));
      }
      for (int i = 0; i < 12; ++i) {
        double t = u(rng);
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        double breaks[2] = {t, -t};
        double adaptive = integrate_piecewise(
            [&](double r) { return g_reflection(m, T, exact(t), exact(r)); }, a, b, breaks,
            kQuad);
        CHECK(integral_g_reflection(m, T, exact(t), a, b) ==
              doctest::Approx(adaptive).epsilon(1e-10));
      }
    }
  }
  CHECK(integral_g_reflection(0.5, 1.0, exact(0.2), 0.3, 0.3) == 0.0);
}

TEST_CASE("sign theorem for Gbar on a sampled grid") {
  double T = 1.0;
  auto grid_sign = [&](double m) {
    bool pos = true, neg = true;
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        double t = -T + 2.0 * T * i / 100.0;
        double s = -T + 2.0 * T * j / 100.0;
        if (s == T) continue;
        // one-sided sampling keeps grid collisions with s = +-t well-defined
        double v = g_reflection(m, T, exact(t), after(s));
        pos = pos && v > 0.0;
        neg = neg && v < 0.0;
      }
    }
    return std::pair{pos, neg};
  };
  auto [p1, n1] = grid_sign(0.6);  // mT in (0, pi/4)
  CHECK(p1);
  CHECK_FALSE(n1);
  auto [p2, n2] = grid_sign(-0.6);
  CHECK(n2);
  CHECK_FALSE(p2);
  auto [p3, n3] = grid_sign(1.1);  // mT > pi/4
  CHECK_FALSE(p3);
  CHECK_FALSE(n3);
  auto [p4, n4] = grid_sign(-1.1);
  CHECK_FALSE(p4);
  CHECK_FALSE(n4);
}

TEST_CASE("HbarSmallT: jump of the t = 0 section is m/(m+M)") {
  ProblemParams p{2.36, 1.19, 1.0};
  HbarSmallT h(p);
  double jump = h.at(exact(0.0), before(0.0)) - h.at(exact(0.0), after(0.0));
  CHECK(jump == doctest::Approx(p.m / (p.m + p.M)).epsilon(1e-12));
}

TEST_CASE("HbarSmallT reduces to Gbar at M = 0") {
  ProblemParams p{0.4, 0.0, 0.9};
  HbarSmallT h(p);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 100; ++i) {
    double t = u(rng), s = u(rng);
    if (std::abs(t - s) < 1e-9) continue;
    CHECK(h.at(exact(t), exact(s)) ==
          doctest::Approx(g_reflection(0.4, 0.9, exact(t), exact(s))).epsilon(1e-14));
  }
}

TEST_CASE("HbarSmallT symmetry Hbar_{m,M}(t,s) = -Hbar_{-m,-M}(-t,-s)") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> um(-0.7, 0.7);
  int done = 0;
  while (done < 40) {
    ProblemParams p{um(rng), um(rng), 1.0};
    if (p.on_eigenline() || p.reflection_singular() || std::abs(p.m + p.M) < 0.05 ||
        std::abs(p.m) < 0.02)
      continue;
    HbarSmallT h(p);
    HbarSmallT hm(ProblemParams{-p.m, -p.M, p.T});
    std::uniform_real_distribution<double> u(-0.99, 0.99);
    double t = u(rng), s = u(rng);
    if (std::abs(t - s) < 1e-3 || std::abs(t + s) < 1e-3 || std::abs(s) < 1e-3) continue;
    ++done;
    CHECK(h.at(exact(t), exact(s)) ==
          doctest::Approx(-hm.at(exact(-t), exact(-s))).epsilon(1e-11));
  }
}

TEST_CASE("HbarSmallT normalization and periodicity in both slots") {
  ProblemParams p{0.5, 0.3, 1.0};
  HbarSmallT h(p);
  for (double t : {-0.8, 0.0, 0.33}) {
    CHECK(h.integral_s(t) == doctest::Approx(1.0 / (p.m + p.M)).epsilon(1e-12));
  }
  for (double s : {-0.7, 0.2, 0.66}) {
    CHECK(h.at(exact(p.T), exact(s)) == doctest::Approx(h.at(exact(-p.T), exact(s))).epsilon(1e-12));
  }
  for (double t : {-0.5, 0.4}) {
    CHECK(h.at(exact(t), exact(p.T)) == doctest::Approx(h.at(exact(t), exact(-p.T))).epsilon(1e-12));
  }
}

TEST_CASE("HbarSmallT ds identity: dH/ds = m H(t,-s) at O(h^2)") {
  ProblemParams p{0.45, 0.25, 1.0};
  HbarSmallT h(p);
  double t = 0.37, s = 0.61;  // away from D_t = {0, t, -t}
  auto residual = [&](double step) {
    double fd = (h.at(exact(t), exact(s + step)) - h.at(exact(t), exact(s - step))) / (2 * step);
    return std::abs(fd - p.m * h.at(exact(t), exact(-s)));
  };
  double r1 = residual(1e-2);
  double r2 = residual(5e-3);
  CHECK(r1 < 1e-3);
  // halving the step shrinks the residual about fourfold
  CHECK(r2 < r1 / 2.5);
  CHECK(r2 > r1 / 8.0);
}

TEST_CASE("q_bar properties: periodicity, jump at 0, boundary zero") {
  // q(T) = q(-T)
  ProblemParams p{0.4, 0.3, 1.0};
  HbarSmallT h(p);
  CHECK(q_bar(h, exact(p.T)) == doctest::Approx(q_bar(h, exact(-p.T))).epsilon(1e-12));
  // q(0^+) - q(0^-) = M/(m+M)
  double jump = q_bar(h, after(0.0)) - q_bar(h, before(0.0));
  CHECK(jump == doctest::Approx(p.M / (p.m + p.M)).epsilon(1e-12));
  // on the closed-form boundary M = m(-1+cot(mT))/2 the minimum q(0^-) is zero
  for (double m : {0.1, 0.5, 0.7 * std::numbers::pi / 4.0}) {
    double M0 = 0.5 * m * (-1.0 + 1.0 / std::tan(m * 1.0));
    HbarSmallT hb(ProblemParams{m, M0, 1.0});
    CHECK(std::abs(q_bar(hb, before(0.0))) < 1e-14);
  }
}

TEST_CASE("HbarSmallT guards") {
  CHECK_THROWS_AS(HbarSmallT(ProblemParams{0.4, -0.4, 1.0}), SingularParameter);
  CHECK_THROWS_AS(HbarSmallT(ProblemParams{0.0, 0.5, 1.0}), SingularParameter);
  CHECK_THROWS_AS(HbarSmallT(ProblemParams{0.4, 0.3, 1.5}), DomainError);
}
