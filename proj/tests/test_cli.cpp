// End-to-end checks of the command-line tool: exit codes and file outputs.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string path = "/tmp/greensign_cli_out.txt";
  std::string cmd = std::string(GREENSIGN_CLI_PATH) + " " + args + " >" + path + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

}  // namespace

TEST_CASE("eval reproduces the t = 0 jump table") {
  RunResult r = run_cli("eval --kernel reflection-piecewise -m 2.36 -M 1.19 -T 1 --line t=0 "
                        "--samples 9");
  CHECK(r.exit_code == 0);
  // find the two sides of s = 0 and check the gap m/(m+M) = 0.664788...
  std::istringstream in(r.output);
  std::string line;
  double minus_v = 0, plus_v = 0;
  while (std::getline(in, line)) {
    if (line.rfind("0,exact,0,minus,", 0) == 0) minus_v = std::stod(line.substr(16));
    if (line.rfind("0,exact,0,plus,", 0) == 0) plus_v = std::stod(line.substr(15));
  }
  CHECK(minus_v - plus_v == doctest::Approx(2.36 / 3.55).epsilon(1e-9));
}

TEST_CASE("eval on singular parameters exits 2 and names the predicate") {
  RunResult r = run_cli("eval --kernel ode-exp -m 0 -T 1 --line t=0.5");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("m = 0") != std::string::npos);
}

TEST_CASE("eval --integrate prints 1/m") {
  RunResult r = run_cli("eval --kernel reflection-first-order -m 0.2 -T 1 --integrate "
                        "--line t=0.3");
  CHECK(r.exit_code == 0);
  auto comma = r.output.rfind(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::stod(r.output.substr(comma + 1)) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("matrix command prints the worked matrix and honors --json") {
  RunResult r = run_cli("matrix -m 0.21 -M 0.2 -T 1.6 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"size\": 3") != std::string::npos);
  // singular pair: still prints A and det, exits 3
  RunResult s = run_cli("matrix -m 0.3 -M -0.3 -T 1.6");
  CHECK(s.exit_code == 3);
  CHECK(s.output.find("det =") != std::string::npos);
  // M = 0 prints the identity
  RunResult id = run_cli("matrix -m 0.4 -M 0 -T 1.6");
  CHECK(id.exit_code == 0);
  CHECK(id.output.find("det = 1") != std::string::npos);
}

TEST_CASE("region command writes a grid and a summary") {
  RunResult r = run_cli("region --kernel reflection-piecewise -T 1 --m-min -0.2 --m-max 0.2 "
                        "--M-min -0.3 --M-max 0.3 --res-m 7 --res-M 7 -o /tmp/gs_region.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("cells=49") != std::string::npos);
  std::ifstream in("/tmp/gs_region.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "m,M,class");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) rows += !line.empty();
  CHECK(rows == 49);
  std::remove("/tmp/gs_region.csv");
  // zero-area range: empty file, exit 0
  RunResult z = run_cli("region -T 1 --res-m 0 --res-M 5 -o /tmp/gs_region_empty.csv");
  CHECK(z.exit_code == 0);
  std::remove("/tmp/gs_region_empty.csv");
  // explicit strategies and the boundary side file
  RunResult s = run_cli("region -T 1 --strategy min-scan --res-m 5 --res-M 5 --boundary "
                        "-o /tmp/gs_region_ms.csv");
  CHECK(s.exit_code == 0);
  std::ifstream bf("/tmp/gs_region_ms.csv.boundary.csv");
  std::string bheader;
  std::getline(bf, bheader);
  CHECK(bheader == "m,M_low,M_high,band");
  std::remove("/tmp/gs_region_ms.csv");
  std::remove("/tmp/gs_region_ms.csv.boundary.csv");
}

TEST_CASE("eval --at performs a single sided evaluation") {
  RunResult r = run_cli("eval --kernel reflection-first-order -m 0.2 -T 1 --at t=0,s=0+");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0,exact,0,plus,1.9665774377934") != std::string::npos);
}

TEST_CASE("solve refuses parameters with the wrong kernel sign") {
  RunResult r = run_cli("solve --f tanh2 --lambda 0.2 -m 0.5 -M 0.4 -T 1 --n1 32 --iters 3");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("needs positive") != std::string::npos);
}

TEST_CASE("solve runs the worked configuration and reports the gap") {
  RunResult r = run_cli("solve --f tanh1 --lambda 0.2 -m 0.21 -M 0.2 -T 1.6 --n1 32 "
                        "--iters 5 -o /tmp/gs_trace.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("final_gap=") != std::string::npos);
  std::ifstream in("/tmp/gs_trace.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,t,alpha,beta");
  std::remove("/tmp/gs_trace.csv");
}

TEST_CASE("solve warns when lambda exceeds the hypothesis bound") {
  RunResult r = run_cli("solve --f tanh2 --lambda 0.3 -m 0.5 -M 0.2 -T 1 --n1 32 --iters 2");
  CHECK(r.output.find("warning") != std::string::npos);
}

TEST_CASE("check subcommand passes on the default configuration") {
  RunResult r = run_cli("check --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[ ok ]") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
  // a fixed seed reproduces the report byte for byte
  RunResult again = run_cli("check --seed 7");
  CHECK(r.output == again.output);
  // a fixed parameter point
  RunResult at = run_cli("check --seed 7 --at m=0.3,M=0.2,T=1.3");
  CHECK(at.exit_code == 0);
}

TEST_CASE("config file values are overridden by flags") {
  std::ofstream cfg("/tmp/gs_cfg.ini");
  cfg << "[matrix]\nm=0.21\nM=0.2\nT=1.6\n";
  cfg.close();
  RunResult r = run_cli("--config /tmp/gs_cfg.ini matrix --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"size\": 3") != std::string::npos);
  // flag overrides the config's T: a T <= 1 matrix is 1x1
  RunResult o = run_cli("--config /tmp/gs_cfg.ini matrix --json -T 0.8");
  CHECK(o.exit_code == 0);
  CHECK(o.output.find("\"size\": 1") != std::string::npos);
  std::remove("/tmp/gs_cfg.ini");
}
