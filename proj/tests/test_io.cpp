#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "greensign/io.hpp"

using namespace greensign;

TEST_CASE("floats round-trip through 17 significant digits") {
  for (double v : {1.0 / 3.0, 0.20762193042775187, -1.6, 1e-300, 123456789.123456789}) {
    CHECK(std::stod(format_float(v)) == v);
  }
  CHECK(format_float(0.5) == "0.5");
}

TEST_CASE("region grid CSV layout") {
  RegionGrid grid;
  grid.T = 1.0;
  grid.m_axis = {0.0, 0.5};
  grid.M_axis = {-1.0, 1.0};
  grid.cells = {SignClass::Positive, SignClass::Negative, SignClass::Singular,
                SignClass::SignChanging};
  grid.strategies.assign(4, RegionStrategy::MinScan);
  std::ostringstream os;
  write_region_csv(os, grid);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "m,M,class");
  std::getline(in, line);
  CHECK(line == "0,-1,positive");
  std::getline(in, line);
  CHECK(line == "0,1,negative");
  std::getline(in, line);
  CHECK(line == "0.5,-1,singular");
  std::getline(in, line);
  CHECK(line == "0.5,1,sign-changing");
}

TEST_CASE("region grid JSON carries axes, codes and a legend") {
  RegionGrid grid;
  grid.T = 1.6;
  grid.m_axis = {0.1};
  grid.M_axis = {0.2, 0.3};
  grid.cells = {SignClass::Positive, SignClass::Undetermined};
  grid.strategies = {RegionStrategy::MinScan, RegionStrategy::FixedPointScan};
  std::ostringstream os;
  write_region_json(os, grid);
  nlohmann::json j = nlohmann::json::parse(os.str());
  CHECK(j["T"] == 1.6);
  CHECK(j["cells"] == nlohmann::json({0, 4}));
  CHECK(j["m_axis"][0] == 0.1);
  CHECK(j["legend"]["0"] == "positive");
  CHECK(j["strategies"][1] == "fixed-point-scan");
}

TEST_CASE("trace CSV has one row per node per iteration") {
  IterationTrace trace;
  trace.grid = {-1.0, 0.0, 1.0};
  trace.alpha_seq = {{1, 1, 1}, {0.5, 0.5, 0.5}};
  trace.beta_seq = {{-1, -1, -1}, {-0.5, -0.5, -0.5}};
  std::ostringstream os;
  write_trace_csv(os, trace);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,t,alpha,beta");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("matrix JSON schema") {
  QuadratureCfg cfg;
  AssembledKernel k =
      assemble(ProblemParams{0.21, 0.2, 1.6}, KernelKind::ReflectionFirstOrder, cfg);
  std::ostringstream os;
  write_matrix_json(os, k);
  nlohmann::json j = nlohmann::json::parse(os.str());
  CHECK(j["size"] == 3);
  CHECK(j["A"].size() == 3);
  CHECK(j["A"][0].size() == 3);
  CHECK(j["A_inv"].size() == 3);
  CHECK(j["det"].get<double>() == doctest::Approx(k.det()));
  CHECK(j["A"][0][0].get<double>() == doctest::Approx(k.a(0, 0)));
}

TEST_CASE("eval CSV columns") {
  std::vector<EvalRow> rows{{before(0.0), exact(0.5), 1.25}};
  std::ostringstream os;
  write_eval_csv(os, rows);
  CHECK(os.str() == "t,t_side,s,s_side,value\n0,minus,0.5,exact,1.25\n");
}
