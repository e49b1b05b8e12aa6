#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "growth/grid.hpp"
#include "growth/model.hpp"

namespace growth {

enum class InnerSearch { grid_refinement, golden_section_nested };

/// Treatment of continuation lookups outside the grid hull. `clip` clamps to
/// the boundary (safe but turns the grid floor into an absorbing barrier:
/// along shrinking optimal paths the clamped rows overstate the value by an
/// O(1) amount that propagates inward). `scale` lifts the point back into
/// the hull along its ray through the origin and applies the exact identity
/// V(lambda k, lambda h) = lambda^theta V(k,h) + U(lambda)/(1-beta); it is
/// used only for homogeneous economies, where the identity is a theorem,
/// and falls back to clipping when the ray misses the hull.
enum class HullRule { clip, scale };

struct SolveOptions {
  double tol = 1e-6;          // sup-norm stopping threshold
  int max_iterations = 2000;
  InnerSearch inner_search = InnerSearch::golden_section_nested;
  int inner_points = 32;      // coarse lattice intervals per choice axis
  HullRule hull_rule = HullRule::scale;
  double value_floor = kNegInf;  // display clamp only, never used in search
};

/// One-dimensional fixed point on the ratio x = k/h, kept alongside the
/// reconstructed two-dimensional field.
struct ReducedSolve {
  RatioField w;
  std::vector<double> x_next;  // ratio policy
  std::vector<double> g;      // gross h-growth policy
  int iterations = 0;
  double final_sup_change = std::numeric_limits<double>::infinity();
  bool converged = false;
};

struct SolveResult {
  ValueField value;
  PolicyField policy;
  int iterations = 0;
  double final_sup_change = std::numeric_limits<double>::infinity();
  double max_bellman_residual = 0.0;
  /// Max over interior nodes and lambda in {0.5, 0.8} of the scaling-identity
  /// defect |V(lambda s) - phi1 V(s) - U(lambda)/(1-beta)| / (1 + |V(s)|),
  /// skipping scaled points outside the hull. NaN when the economy is not
  /// homogeneous (direct model with gamma > 0).
  double homogeneity_residual = std::numeric_limits<double>::quiet_NaN();
  long clip_events = 0;       // continuation lookups clamped to the hull
  long extension_events = 0;  // lookups resolved through the scaling identity
  int dead_nodes = 0;     // nodes where no transition attains finite value
  double first_sweep_min_change = 0.0;
  double first_sweep_max_change = 0.0;
  bool converged = false;
  std::optional<ReducedSolve> reduced;
};

struct BackupStats {
  long clip_events = 0;
  long extension_events = 0;
  int dead_nodes = 0;
};

/// One application of the Bellman operator on the grid: at each node the sup
/// of F + beta*v over the feasibility box, coarse lattice scan (with the
/// time-share kink inserted as a lattice point) plus nested golden-section
/// refinement. Ties break toward smaller k', then smaller h'. Nodes are
/// independent and the result does not depend on evaluation order.
std::pair<ValueField, PolicyField> bellman_backup(const ValueField& v,
                                                  const Economy& econ,
                                                  const SolveOptions& opts,
                                                  BackupStats* stats = nullptr);

/// Value iteration from v0 = 0 until the sup change over nodes finite in
/// both iterates drops to tol. Throws std::domain_error if the discount
/// condition beta * growth_constant >= 1 fails.
SolveResult solve_value_iteration(const Economy& econ, const GridSpec& grid,
                                  const SolveOptions& opts);
SolveResult solve_value_iteration(const ModelParams& params,
                                  const GridSpec& grid,
                                  const SolveOptions& opts);

/// Homogeneity-reduced solve: fixed point of
///   W(x) = sup { F(x,1,x'g,g) + beta*[g^theta W(x') + U(g)/(1-beta)] }
/// over gross growth g in [1-delta_h, D_h] and next ratio x', then
/// reconstruction V(k,h) = h^theta W(k/h) + U(h)/(1-beta). Requires a
/// homogeneous economy: gamma = 0, or transformed coordinates.
SolveResult solve_reduced(const Economy& econ,
                          const std::vector<double>& ratio_nodes,
                          const GridSpec& reconstruct_on,
                          const SolveOptions& opts);
SolveResult solve_reduced(const ModelParams& params,
                          const std::vector<double>& ratio_nodes,
                          const GridSpec& reconstruct_on,
                          const SolveOptions& opts);

/// Exact backward induction over T periods: T+1 sweeps of single-step
/// exhaustive maximization on a uniform transition lattice (plus the
/// time-share kink), starting from a zero continuation. Serves as the
/// independent cross-check for the value-iteration path; hull_rule must
/// match the solve being checked.
ValueField finite_horizon_oracle(const Economy& econ, const GridSpec& grid,
                                 int T, int lattice,
                                 HullRule hull_rule = HullRule::scale);
ValueField finite_horizon_oracle(const ModelParams& params,
                                 const GridSpec& grid, int T, int lattice,
                                 HullRule hull_rule = HullRule::scale);

/// Scaling-identity defect of a value field for a homogeneous economy; see
/// SolveResult::homogeneity_residual.
double homogeneity_residual(const ValueField& v, const Economy& econ);

}  // namespace growth
