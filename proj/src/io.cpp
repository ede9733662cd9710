#include "greensign/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace greensign {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_region_csv(std::ostream& os, const RegionGrid& grid) {
  os << "m,M,class\n";
  int nM = static_cast<int>(grid.M_axis.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    double m = grid.m_axis[i / nM];
    double M = grid.M_axis[i % nM];
    os << format_float(m) << ',' << format_float(M) << ',' << to_string(grid.cells[i])
       << '\n';
  }
}

void write_region_json(std::ostream& os, const RegionGrid& grid) {
  nlohmann::json j;
  j["T"] = grid.T;
  j["kind"] = grid.kind == SweepKind::Ode ? "ode" : "reflection";
  j["m_axis"] = grid.m_axis;
  j["M_axis"] = grid.M_axis;
  j["legend"] = {{"0", "positive"},
                 {"1", "negative"},
                 {"2", "sign-changing"},
                 {"3", "singular"},
                 {"4", "undetermined"}};
  std::vector<int> codes(grid.cells.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    codes[i] = static_cast<int>(grid.cells[i]);
  j["cells"] = codes;
  std::vector<std::string> strategies(grid.strategies.size());
  for (std::size_t i = 0; i < grid.strategies.size(); ++i)
    strategies[i] = to_string(grid.strategies[i]);
  j["strategies"] = strategies;
  os << j.dump(2) << '\n';
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
  os << "iter,t,alpha,beta\n";
  for (std::size_t it = 0; it < trace.alpha_seq.size(); ++it)
    for (std::size_t j = 0; j < trace.grid.size(); ++j)
      os << it << ',' << format_float(trace.grid[j]) << ','
         << format_float(trace.alpha_seq[it][j]) << ','
         << format_float(trace.beta_seq[it][j]) << '\n';
}

void write_trace_json(std::ostream& os, const IterationTrace& trace) {
  nlohmann::json j;
  j["grid"] = trace.grid;
  j["alpha"] = trace.alpha_seq;
  j["beta"] = trace.beta_seq;
  j["monotone_ok"] = trace.monotone_ok;
  if (trace.converged_at)
    j["converged_at"] = *trace.converged_at;
  else
    j["converged_at"] = nullptr;
  j["final_gap"] = trace.final_gap;
  os << j.dump(2) << '\n';
}

namespace {

nlohmann::json matrix_to_json(const AssembledKernel& k, bool inverse) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < k.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < k.size(); ++j) row.push_back(inverse ? k.a_inv(i, j) : k.a(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void write_matrix_json(std::ostream& os, const AssembledKernel& k) {
  nlohmann::json j;
  j["size"] = k.size();
  j["A"] = matrix_to_json(k, false);
  j["A_inv"] = matrix_to_json(k, true);
  j["det"] = k.det();
  os << j.dump(2) << '\n';
}

void write_matrix_text(std::ostream& os, const AssembledKernel& k) {
  os << "A (" << k.size() << "x" << k.size() << "):\n";
  for (int i = 0; i < k.size(); ++i) {
    for (int j = 0; j < k.size(); ++j) os << (j ? " " : "  ") << format_float(k.a(i, j));
    os << '\n';
  }
  os << "A_inv:\n";
  for (int i = 0; i < k.size(); ++i) {
    for (int j = 0; j < k.size(); ++j) os << (j ? " " : "  ") << format_float(k.a_inv(i, j));
    os << '\n';
  }
  os << "det = " << format_float(k.det()) << '\n';
}

void write_eval_csv(std::ostream& os, const std::vector<EvalRow>& rows) {
  os << "t,t_side,s,s_side,value\n";
  for (const EvalRow& r : rows)
    os << format_float(r.t.value) << ',' << side_name(r.t.side) << ','
       << format_float(r.s.value) << ',' << side_name(r.s.side) << ','
       << format_float(r.value) << '\n';
}

void write_boundary_csv(std::ostream& os, const std::vector<BoundarySample>& rows) {
  os << "m,M_low,M_high,band\n";
  for (const BoundarySample& r : rows)
    os << format_float(r.m) << ',' << format_float(r.M_low) << ',' << format_float(r.M_high)
       << ',' << r.band << '\n';
}

}  // namespace greensign
