#include "growth/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "growth/paths.hpp"
#include "growth/verify.hpp"

namespace fs = std::filesystem;

namespace growth {

namespace {

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + name + " under " + dir);
  }
  out << content;
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::string* header) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      if (header != nullptr) *header = line;
      first = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Recover the node axes from rows ordered k-major, h inner.
GridSpec grid_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("csv has no data rows");
  GridSpec g;
  for (const auto& row : rows) {
    if (row.size() < 2) throw std::invalid_argument("csv row too short");
    if (row[0] == rows[0][0]) g.h_nodes.push_back(row[1]);
    if (g.k_nodes.empty() || row[0] != g.k_nodes.back()) {
      g.k_nodes.push_back(row[0]);
    }
  }
  if (rows.size() != g.k_nodes.size() * g.h_nodes.size()) {
    throw std::invalid_argument("csv rows do not form a full grid");
  }
  return g;
}

}  // namespace

std::string solve_to_csv(const SolveResult& res, double value_floor) {
  std::ostringstream os;
  os << "k,h,V,k_next,h_next,c,u,v\n";
  const GridSpec& g = res.value.grid();
  for (int i = 0; i < g.nk(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const int n = res.policy.idx(i, j);
      const double shown = std::max(res.value.at(i, j), value_floor);
      os << format_double(g.k_nodes[i]) << ',' << format_double(g.h_nodes[j])
         << ',' << format_double(shown) << ','
         << format_double(res.policy.k_next[n]) << ','
         << format_double(res.policy.h_next[n]) << ','
         << format_double(res.policy.c[n]) << ','
         << format_double(res.policy.u[n]) << ','
         << format_double(res.policy.v[n]) << '\n';
    }
  }
  return os.str();
}

ValueField load_value_csv(const std::string& path) {
  const auto rows = read_csv(path, nullptr);
  GridSpec g = grid_from_rows(rows);
  ValueField v(g, 0.0);
  std::size_t r = 0;
  for (int i = 0; i < g.nk(); ++i) {
    for (int j = 0; j < g.nh(); ++j, ++r) {
      if (rows[r].size() < 3) throw std::invalid_argument("value csv row too short");
      v.at(i, j) = rows[r][2];
    }
  }
  return v;
}

PolicyField load_policy_csv(const std::string& path) {
  const auto rows = read_csv(path, nullptr);
  GridSpec g = grid_from_rows(rows);
  PolicyField p(g);
  std::size_t r = 0;
  for (int i = 0; i < g.nk(); ++i) {
    for (int j = 0; j < g.nh(); ++j, ++r) {
      if (rows[r].size() < 7) throw std::invalid_argument("policy csv row too short");
      const int n = p.idx(i, j);
      p.k_next[n] = rows[r][2];
      p.h_next[n] = rows[r][3];
      p.c[n] = rows[r][4];
      p.u[n] = rows[r][5];
      p.v[n] = rows[r][6];
    }
  }
  return p;
}

namespace {

std::string policy_to_csv(const SolveResult& res) {
  std::ostringstream os;
  os << "k,h,k_next,h_next,c,u,v\n";
  const GridSpec& g = res.value.grid();
  for (int i = 0; i < g.nk(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const int n = res.policy.idx(i, j);
      os << format_double(g.k_nodes[i]) << ',' << format_double(g.h_nodes[j])
         << ',' << format_double(res.policy.k_next[n]) << ','
         << format_double(res.policy.h_next[n]) << ','
         << format_double(res.policy.c[n]) << ','
         << format_double(res.policy.u[n]) << ','
         << format_double(res.policy.v[n]) << '\n';
    }
  }
  return os.str();
}

std::string diagnostics_json(const SolveResult& res) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"converged\": " << (res.converged ? "true" : "false") << ",\n";
  os << "  \"iterations\": " << res.iterations << ",\n";
  os << "  \"final_sup_change\": " << format_double(res.final_sup_change)
     << ",\n";
  os << "  \"max_bellman_residual\": "
     << format_double(res.max_bellman_residual) << ",\n";
  os << "  \"homogeneity_residual\": "
     << format_double(res.homogeneity_residual) << ",\n";
  os << "  \"clip_events\": " << res.clip_events << ",\n";
  os << "  \"extension_events\": " << res.extension_events << ",\n";
  os << "  \"dead_nodes\": " << res.dead_nodes << ",\n";
  os << "  \"first_sweep_min_change\": "
     << format_double(res.first_sweep_min_change) << ",\n";
  os << "  \"first_sweep_max_change\": "
     << format_double(res.first_sweep_max_change) << "\n";
  os << "}\n";
  return os.str();
}

int input_error(const std::exception& e) {
  std::cerr << "input error: " << e.what() << "\n";
  return kExitInputError;
}

}  // namespace

int cmd_check(const RunConfig& cfg, const std::string& out_dir) {
  AssumptionReport report;
  try {
    cfg.model.validate();
    report = check_all(cfg.model, cfg.check_samples, cfg.seed);
  } catch (const std::exception& e) {
    return input_error(e);
  }
  const std::string text = report.to_text();
  std::cout << text;
  write_file(out_dir, "report.txt", text);
  write_file(out_dir, "report.json", report.to_json());
  return report.all_pass() ? kExitOk : kExitAssumptionFailure;
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
  AssumptionReport report;
  GridSpec grid;
  try {
    cfg.model.validate();
    report = compute_constants(cfg.model);
    grid = cfg.make_grid();
    grid.validate();
  } catch (const std::exception& e) {
    return input_error(e);
  }
  const auto& h2 = report.verdicts.at("H2");
  const auto& bc = report.verdicts.at("betacond");
  if (h2.verdict == Verdict::fail || bc.verdict == Verdict::fail) {
    std::cerr << "refusing to solve: " << (h2.verdict == Verdict::fail
                                               ? "H2 fails"
                                               : "discount condition fails")
              << " (" << bc.detail << ")\n";
    return kExitAssumptionFailure;
  }
  SolveResult res = solve_value_iteration(cfg.model, grid, cfg.solve);
  write_file(out_dir, "value.csv", solve_to_csv(res, cfg.solve.value_floor));
  write_file(out_dir, "policy.csv", policy_to_csv(res));
  write_file(out_dir, "diagnostics.json", diagnostics_json(res));
  std::cout << (res.converged ? "converged" : "NOT converged") << " after "
            << res.iterations
            << " iterations, sup change = " << res.final_sup_change << "\n";
  return res.converged ? kExitOk : kExitNoConvergence;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, State start,
                 int horizon) {
  ValueField value;
  PolicyField policy;
  try {
    cfg.model.validate();
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (!(start.k > 0.0) || !(start.h > 0.0)) {
      throw std::invalid_argument("start state must be interior");
    }
    value = load_value_csv((fs::path(out_dir) / "value.csv").string());
    policy = load_policy_csv((fs::path(out_dir) / "policy.csv").string());
  } catch (const std::exception& e) {
    return input_error(e);
  }
  const Path path = simulate(policy, start, horizon, cfg.model);
  std::ostringstream os;
  os << "t,k,h,c,u,v,utility,discounted_value\n";
  double bt = 1.0;
  for (std::size_t t = 0; t < path.states.size(); ++t) {
    const State& s = path.states[t];
    os << t << ',' << format_double(s.k) << ',' << format_double(s.h);
    if (t < path.controls.size()) {
      os << ',' << format_double(path.controls[t].c) << ','
         << format_double(path.controls[t].u) << ','
         << format_double(path.controls[t].v) << ','
         << format_double(path.utilities[t]);
    } else {
      os << ",,,,";
    }
    os << ',' << format_double(bt * value.eval(s.k, s.h)) << '\n';
    bt *= cfg.model.beta;
  }
  write_file(out_dir, "path.csv", os.str());
  if (path.hull_exits > 0) {
    std::cout << "note: policy lookups left the grid hull in "
              << path.hull_exits << " periods\n";
  }
  if (path.states.size() >= 3) {
    std::cout << growth_diagnostics(path).to_text() << "\n";
  }
  return kExitOk;
}

int cmd_transform(const RunConfig& cfg, const std::string& out_dir) {
  GridSpec grid;
  AssumptionReport report;
  try {
    cfg.model.validate();
    report = compute_constants(cfg.model);
    grid = cfg.make_grid();
    grid.validate();
  } catch (const std::exception& e) {
    return input_error(e);
  }
  if (report.verdicts.at("H2").verdict == Verdict::fail ||
      report.verdicts.at("betacond").verdict == Verdict::fail ||
      report.verdicts.at("betacond-transformed").verdict == Verdict::fail) {
    std::cerr << "refusing to solve: assumption failure\n";
    return kExitAssumptionFailure;
  }

  // Both routes must see identical hull treatment for the comparison to
  // isolate the change of variables; the scaling extension only exists on
  // the transformed side.
  SolveOptions opts = cfg.solve;
  opts.hull_rule = HullRule::clip;
  const SolveResult direct =
      solve_value_iteration(Economy::direct(cfg.model), grid, opts);

  GridSpec tgrid = grid;
  for (double& h : tgrid.h_nodes) h = hhat_transform(h, cfg.model);
  const SolveResult mapped =
      solve_value_iteration(Economy::transformed(cfg.model), tgrid, opts);

  std::ostringstream os;
  os << "k,h,V_direct,V_transformed,rel_gap\n";
  double max_gap = 0.0;
  for (int i = 0; i < grid.nk(); ++i) {
    for (int j = 0; j < grid.nh(); ++j) {
      const double vd = direct.value.at(i, j);
      const double vt = mapped.value.at(i, j);
      const double gap = std::abs(vd - vt) / (1.0 + std::abs(vd));
      const bool interior = i > 0 && i + 1 < grid.nk() && j > 0 && j + 1 < grid.nh();
      if (interior) max_gap = std::max(max_gap, gap);
      os << format_double(grid.k_nodes[i]) << ','
         << format_double(grid.h_nodes[j]) << ',' << format_double(vd) << ','
         << format_double(vt) << ',' << format_double(gap) << '\n';
    }
  }
  write_file(out_dir, "transform.csv", os.str());
  std::cout << "max relative gap on interior nodes: " << max_gap << "\n";
  if (!direct.converged || !mapped.converged) return kExitNoConvergence;
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  try {
    cfg.model.validate();
    if (cfg.sweep_parameter != "beta" && cfg.sweep_parameter != "gamma" &&
        cfg.sweep_parameter != "theta") {
      throw std::invalid_argument(
          "sweep.parameter must be beta, gamma or theta");
    }
    if (cfg.sweep_values.empty()) {
      throw std::invalid_argument("sweep.values is empty");
    }
  } catch (const std::exception& e) {
    return input_error(e);
  }

  std::ostringstream os;
  os << "parameter,value,all_pass,betacond,beta_zeta,zeta,v_bar,u_bar,D_h\n";
  int pass_rows = 0;
  for (double value : cfg.sweep_values) {
    ModelParams m = cfg.model;
    try {
      if (cfg.sweep_parameter == "beta") m.beta = value;
      else if (cfg.sweep_parameter == "gamma") m.gamma = value;
      else m.theta = Theta(value);
      m.validate();
    } catch (const std::exception& e) {
      return input_error(e);
    }
    const AssumptionReport r = check_all(m, cfg.check_samples, cfg.seed);
    if (r.all_pass()) ++pass_rows;
    os << cfg.sweep_parameter << ',' << format_double(value) << ','
       << (r.all_pass() ? "pass" : "fail") << ','
       << to_string(r.verdicts.at("betacond").verdict) << ','
       << format_double(r.beta_zeta) << ',' << format_double(r.zeta) << ','
       << format_double(r.v_bar) << ',' << format_double(r.u_bar) << ','
       << format_double(r.D_h) << '\n';
  }
  write_file(out_dir, "sweep.csv", os.str());
  std::cout << pass_rows << " of " << cfg.sweep_values.size()
            << " sweep points pass all checks\n";
  return kExitOk;
}

}  // namespace growth
