#pragma once

#include <utility>
#include <vector>

#include "growth/utility.hpp"

namespace growth {

/// Strictly increasing positive node sequences, log-spaced by default.
/// ratio_nodes drive the one-dimensional reduced solve on x = k/h.
struct GridSpec {
  std::vector<double> k_nodes;
  std::vector<double> h_nodes;
  std::vector<double> ratio_nodes;

  static std::vector<double> log_spaced(double lo, double hi, int count);
  static GridSpec log_grid(double k_lo, double k_hi, int k_count, double h_lo,
                           double h_hi, int h_count);

  void validate() const;  // >= 4 nodes per populated axis, positive, increasing
  int nk() const { return static_cast<int>(k_nodes.size()); }
  int nh() const { return static_cast<int>(h_nodes.size()); }
};

/// Location of a coordinate within one axis: bracketing cell plus the
/// interpolation weight in log space. Points outside the hull clamp to the
/// boundary node and report clipped = true.
struct AxisLookup {
  int cell = 0;       // lower node index
  double w = 0.0;     // weight on the upper node, in [0,1]
  bool clipped = false;
};

AxisLookup locate_log(const std::vector<double>& log_nodes, double log_x);

/// Extended-real values on a 2-D grid, interpolated bilinearly in
/// (log k, log h). A cell with a -inf corner yields -inf only in the
/// sub-rectangle nearest that corner; elsewhere the finite corners are
/// averaged with renormalized weights, so axis singularities cannot poison
/// the interior.
class ValueField {
 public:
  ValueField() = default;
  ValueField(GridSpec grid, double init = 0.0);

  double& at(int i, int j) { return values_[idx(i, j)]; }
  double at(int i, int j) const { return values_[idx(i, j)]; }

  double eval(double k, double h) const;
  /// As eval, but counts hull clipping into *clips.
  double eval_counted(double k, double h, long* clips) const;
  double eval_from_lookup(const AxisLookup& ik, const AxisLookup& jh) const;

  AxisLookup locate_k(double k) const;
  AxisLookup locate_h(double h) const;

  int nk() const { return grid_.nk(); }
  int nh() const { return grid_.nh(); }
  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& raw() const { return values_; }
  std::vector<double>& raw() { return values_; }

 private:
  int idx(int i, int j) const { return i * grid_.nh() + j; }

  GridSpec grid_;
  std::vector<double> values_;
  std::vector<double> log_k_, log_h_;
};

/// Per-node maximizing transition and the controls it implies. Policies
/// interpolate bilinearly in log state coordinates (linearly in the values,
/// which may legitimately be zero).
struct PolicyField {
  GridSpec grid;
  std::vector<double> k_next, h_next, c, u, v;  // node-major, k outer

  PolicyField() = default;
  explicit PolicyField(GridSpec g);

  int idx(int i, int j) const { return i * grid.nh() + j; }
  /// Interpolated (k', h') at an off-node state; clamps to the hull.
  std::pair<double, double> eval(double k, double h, bool* left_hull = nullptr) const;
};

/// One-dimensional value function on the ratio axis, linear in log x.
class RatioField {
 public:
  RatioField() = default;
  explicit RatioField(std::vector<double> nodes, double init = 0.0);

  double& at(int i) { return values_[i]; }
  double at(int i) const { return values_[i]; }
  double eval(double x) const;
  double eval_counted(double x, long* clips) const;

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> nodes_, values_, log_nodes_;
};

}  // namespace growth
