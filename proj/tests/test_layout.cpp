#include <doctest.h>

#include <random>

#include "greensign/layout.hpp"

using namespace greensign;

TEST_CASE("layout for T = 1.6: labels {-1,0,1}") {
  CellLayout l = build_layout(1.6);
  REQUIRE(l.size() == 3);
  CHECK(l.cells[0].label == -1);
  CHECK(l.cells[0].lo == doctest::Approx(-1.6));
  CHECK(l.cells[0].hi == -1.0);
  CHECK(l.cells[1].label == 0);
  CHECK(l.cells[1].lo == -1.0);
  CHECK(l.cells[1].hi == 1.0);
  CHECK(l.cells[2].label == 1);
  CHECK(l.cells[2].lo == 1.0);
  CHECK(l.cells[2].hi == doctest::Approx(1.6));
}

TEST_CASE("layout for T <= 1 collapses to one cell") {
  CellLayout l = build_layout(0.7);
  REQUIRE(l.size() == 1);
  CHECK(l.cells[0].label == 0);
  CHECK(l.cells[0].lo == doctest::Approx(-0.7));
  CHECK(l.cells[0].hi == doctest::Approx(0.7));
}

TEST_CASE("integer T drops the zero-length end cells") {
  CellLayout l = build_layout(2.0);
  REQUIRE(l.size() == 3);
  CHECK(l.cells[0].label == -1);
  CHECK(l.cells[0].lo == -2.0);
  CHECK(l.cells[0].hi == -1.0);
  CHECK(l.cells[1].label == 0);
  CHECK(l.cells[2].label == 1);
  CHECK(l.cells[2].lo == 1.0);
  CHECK(l.cells[2].hi == 2.0);
}

TEST_CASE("layout for T = 2.1 keeps all five labels") {
  CellLayout l = build_layout(2.1);
  REQUIRE(l.size() == 5);
  CHECK(l.cells[0].label == -2);
  CHECK(l.cells[1].lo == -2.0);
  CHECK(l.cells[1].hi == -1.0);
  CHECK(l.cells[4].label == 2);
}

TEST_CASE("cells tile [-T, T] and agree with floor_tz") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uT(0.2, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    double T = uT(rng);
    CellLayout l = build_layout(T);
    // tiling: measures add up, cells are ordered and non-overlapping
    double measure = 0.0;
    for (int i = 0; i < l.size(); ++i) {
      measure += l.cells[i].hi - l.cells[i].lo;
      if (i) CHECK(l.cells[i].lo == doctest::Approx(l.cells[i - 1].hi));
    }
    CHECK(measure == doctest::Approx(2 * T).epsilon(1e-12));
    // membership matches the truncation map
    std::uniform_real_distribution<double> u(-T, T);
    for (int i = 0; i < 50; ++i) {
      double s = u(rng);
      int idx = l.cell_containing(exact(s));
      REQUIRE(idx >= 0);
      long want = floor_tz(s);
      // dropped end cells absorb their endpoint
      bool label_ok = l.cells[idx].label == want ||
                      (l.index_of_label(static_cast<int>(want)) < 0 &&
                       std::abs(l.cells[idx].label - want) == 1);
      CHECK(label_ok);
    }
  }
  CHECK_THROWS_AS(build_layout(0.0), DomainError);
  CHECK_THROWS_AS(build_layout(-1.0), DomainError);
}
