#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growth/model.hpp"
#include "growth/solver.hpp"

namespace growth {

/// Run configuration parsed from a flat key-value file with dotted section
/// keys (model.alpha = 0.3). Every field has a default: the model defaults
/// are the baseline calibration, the grid an 8x8 log grid on [0.25, 4]^2.
/// serialize() is the inverse of parse(): numbers round-trip exactly.
struct RunConfig {
  ModelParams model;

  double grid_k_min = 0.25, grid_k_max = 4.0;
  int grid_k_count = 8;
  double grid_h_min = 0.25, grid_h_max = 4.0;
  int grid_h_count = 8;
  double ratio_min = 0.0625, ratio_max = 16.0;
  int ratio_count = 64;

  SolveOptions solve;

  std::string sweep_parameter;        // "beta" | "gamma" | "theta"
  std::vector<double> sweep_values;

  int check_samples = 20000;
  std::uint64_t seed = 20240101;

  GridSpec make_grid() const;
  std::vector<double> make_ratio_nodes() const;

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);
  std::string serialize() const;
};

/// Shortest round-trip decimal representation; -inf and inf spelled as
/// literal tokens.
std::string format_double(double x);
double parse_double(const std::string& text);

}  // namespace growth
