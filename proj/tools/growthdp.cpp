// Command-line driver: check | solve | simulate | transform | sweep.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "growth/commands.hpp"

namespace {

growth::State parse_start(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--start", "expected k,h");
  }
  return {growth::parse_double(text.substr(0, comma)),
          growth::parse_double(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time two-sector endogenous growth model: assumption "
               "checks, Bellman solver, path simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::string start_text = "1,1";
  long long seed = -1;
  int horizon = 100;

  app.add_option("--config", config_path, "configuration file (key = value)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "override the configured RNG seed");

  auto* check = app.add_subcommand("check", "verify model assumptions");
  auto* solve = app.add_subcommand("solve", "value iteration on the grid");
  auto* simulate =
      app.add_subcommand("simulate", "roll the solved policy forward");
  simulate->add_option("--start", start_text, "initial state k,h");
  simulate->add_option("--horizon", horizon, "number of periods");
  auto* transform = app.add_subcommand(
      "transform", "externality solve, direct vs change of variables");
  auto* sweep = app.add_subcommand("sweep", "assumption checks over a "
                                            "parameter range");

  CLI11_PARSE(app, argc, argv);

  growth::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = growth::RunConfig::parse_file(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return growth::kExitInputError;
  }

  try {
    if (check->parsed()) return growth::cmd_check(cfg, out_dir);
    if (solve->parsed()) return growth::cmd_solve(cfg, out_dir);
    if (simulate->parsed()) {
      return growth::cmd_simulate(cfg, out_dir, parse_start(start_text),
                                  horizon);
    }
    if (transform->parsed()) return growth::cmd_transform(cfg, out_dir);
    if (sweep->parsed()) return growth::cmd_sweep(cfg, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return growth::kExitInputError;
  }
  return growth::kExitInputError;
}
