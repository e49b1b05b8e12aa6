#pragma once

#include <string>

#include "growth/config.hpp"
#include "growth/grid.hpp"
#include "growth/solver.hpp"

namespace growth {

// Exit codes shared by the CLI subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssumptionFailure = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitInputError = 4;

/// Run the assumption checks; writes report.txt and report.json.
int cmd_check(const RunConfig& cfg, const std::string& out_dir);

/// Solve by value iteration; writes value.csv, policy.csv, diagnostics.json.
/// Refuses to run when the discount condition fails.
int cmd_solve(const RunConfig& cfg, const std::string& out_dir);

/// Roll the solved policy forward from start; reads the solve artifacts from
/// out_dir and writes path.csv.
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, State start,
                 int horizon);

/// Solve the externality model twice (directly and through the change of
/// variables) and write the back-mapped comparison to transform.csv.
int cmd_transform(const RunConfig& cfg, const std::string& out_dir);

/// One assumption-check row per sweep value; writes sweep.csv.
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir);

/// value.csv serialization of a solve (one row per node: k, h, V, k', h',
/// c, u, v) with the display floor applied to V, and its policy/value
/// loaders used by cmd_simulate.
std::string solve_to_csv(const SolveResult& res, double value_floor);
ValueField load_value_csv(const std::string& path);
PolicyField load_policy_csv(const std::string& path);

}  // namespace growth
