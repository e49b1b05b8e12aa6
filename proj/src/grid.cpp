#include "growth/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growth {

std::vector<double> GridSpec::log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> nodes(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    nodes[i] = std::exp(llo + t * (lhi - llo));
  }
  nodes.front() = lo;  // pin the endpoints exactly
  nodes.back() = hi;
  return nodes;
}

GridSpec GridSpec::log_grid(double k_lo, double k_hi, int k_count, double h_lo,
                            double h_hi, int h_count) {
  GridSpec g;
  g.k_nodes = log_spaced(k_lo, k_hi, k_count);
  g.h_nodes = log_spaced(h_lo, h_hi, h_count);
  return g;
}

namespace {

void check_axis(const std::vector<double>& nodes, const char* name) {
  if (nodes.size() < 4) {
    throw std::invalid_argument(std::string("GridSpec: ") + name +
                                " needs at least 4 nodes");
  }
  double prev = 0.0;
  for (double x : nodes) {
    if (!(x > prev)) {
      throw std::invalid_argument(std::string("GridSpec: ") + name +
                                  " must be positive and strictly increasing");
    }
    prev = x;
  }
}

}  // namespace

void GridSpec::validate() const {
  if (!k_nodes.empty() || !h_nodes.empty()) {
    check_axis(k_nodes, "k_nodes");
    check_axis(h_nodes, "h_nodes");
  }
  if (!ratio_nodes.empty()) check_axis(ratio_nodes, "ratio_nodes");
}

AxisLookup locate_log(const std::vector<double>& log_nodes, double log_x) {
  AxisLookup r;
  const int n = static_cast<int>(log_nodes.size());
  if (log_x <= log_nodes.front()) {
    r.cell = 0;
    r.w = 0.0;
    r.clipped = log_x < log_nodes.front();
    return r;
  }
  if (log_x >= log_nodes.back()) {
    r.cell = n - 2;
    r.w = 1.0;
    r.clipped = log_x > log_nodes.back();
    return r;
  }
  const auto it =
      std::upper_bound(log_nodes.begin(), log_nodes.end(), log_x);
  r.cell = static_cast<int>(it - log_nodes.begin()) - 1;
  r.w = (log_x - log_nodes[r.cell]) /
        (log_nodes[r.cell + 1] - log_nodes[r.cell]);
  return r;
}

ValueField::ValueField(GridSpec grid, double init) : grid_(std::move(grid)) {
  grid_.validate();
  values_.assign(static_cast<std::size_t>(grid_.nk()) * grid_.nh(), init);
  log_k_.resize(grid_.nk());
  log_h_.resize(grid_.nh());
  for (int i = 0; i < grid_.nk(); ++i) log_k_[i] = std::log(grid_.k_nodes[i]);
  for (int j = 0; j < grid_.nh(); ++j) log_h_[j] = std::log(grid_.h_nodes[j]);
}

AxisLookup ValueField::locate_k(double k) const {
  return locate_log(log_k_, std::log(std::max(k, 1e-300)));
}

AxisLookup ValueField::locate_h(double h) const {
  return locate_log(log_h_, std::log(std::max(h, 1e-300)));
}

double ValueField::eval_from_lookup(const AxisLookup& ik,
                                    const AxisLookup& jh) const {
  const double v00 = at(ik.cell, jh.cell);
  const double v10 = at(ik.cell + 1, jh.cell);
  const double v01 = at(ik.cell, jh.cell + 1);
  const double v11 = at(ik.cell + 1, jh.cell + 1);
  const double w00 = (1.0 - ik.w) * (1.0 - jh.w);
  const double w10 = ik.w * (1.0 - jh.w);
  const double w01 = (1.0 - ik.w) * jh.w;
  const double w11 = ik.w * jh.w;
  if (is_finite(v00) && is_finite(v10) && is_finite(v01) && is_finite(v11)) {
    return w00 * v00 + w10 * v10 + w01 * v01 + w11 * v11;
  }
  // Split-cell rule: the quadrant nearest a -inf corner is -inf; elsewhere
  // average the finite corners with renormalized weights.
  const double near =
      (ik.w >= 0.5 ? (jh.w >= 0.5 ? v11 : v10) : (jh.w >= 0.5 ? v01 : v00));
  if (!is_finite(near)) return kNegInf;
  double acc = 0.0, wsum = 0.0;
  const double vs[4] = {v00, v10, v01, v11};
  const double ws[4] = {w00, w10, w01, w11};
  for (int c = 0; c < 4; ++c) {
    if (is_finite(vs[c])) {
      acc += ws[c] * vs[c];
      wsum += ws[c];
    }
  }
  return wsum > 0.0 ? acc / wsum : kNegInf;
}

double ValueField::eval(double k, double h) const {
  return eval_from_lookup(locate_k(k), locate_h(h));
}

double ValueField::eval_counted(double k, double h, long* clips) const {
  const AxisLookup ik = locate_k(k);
  const AxisLookup jh = locate_h(h);
  if (clips != nullptr && (ik.clipped || jh.clipped)) ++*clips;
  return eval_from_lookup(ik, jh);
}

PolicyField::PolicyField(GridSpec g) : grid(std::move(g)) {
  grid.validate();
  const std::size_t count =
      static_cast<std::size_t>(grid.nk()) * grid.nh();
  k_next.assign(count, 0.0);
  h_next.assign(count, 0.0);
  c.assign(count, 0.0);
  u.assign(count, 0.0);
  v.assign(count, 0.0);
}

std::pair<double, double> PolicyField::eval(double k, double h,
                                            bool* left_hull) const {
  std::vector<double> log_k(grid.nk()), log_h(grid.nh());
  for (int i = 0; i < grid.nk(); ++i) log_k[i] = std::log(grid.k_nodes[i]);
  for (int j = 0; j < grid.nh(); ++j) log_h[j] = std::log(grid.h_nodes[j]);
  const AxisLookup ik = locate_log(log_k, std::log(std::max(k, 1e-300)));
  const AxisLookup jh = locate_log(log_h, std::log(std::max(h, 1e-300)));
  if (left_hull != nullptr) *left_hull = ik.clipped || jh.clipped;
  auto interp = [&](const std::vector<double>& f) {
    return (1.0 - ik.w) * (1.0 - jh.w) * f[idx(ik.cell, jh.cell)] +
           ik.w * (1.0 - jh.w) * f[idx(ik.cell + 1, jh.cell)] +
           (1.0 - ik.w) * jh.w * f[idx(ik.cell, jh.cell + 1)] +
           ik.w * jh.w * f[idx(ik.cell + 1, jh.cell + 1)];
  };
  return {interp(k_next), interp(h_next)};
}

RatioField::RatioField(std::vector<double> nodes, double init)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() < 4) {
    throw std::invalid_argument("RatioField: need at least 4 nodes");
  }
  double prev = 0.0;
  for (double x : nodes_) {
    if (!(x > prev)) {
      throw std::invalid_argument(
          "RatioField: nodes must be positive and strictly increasing");
    }
    prev = x;
  }
  values_.assign(nodes_.size(), init);
  log_nodes_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    log_nodes_[i] = std::log(nodes_[i]);
  }
}

double RatioField::eval(double x) const { return eval_counted(x, nullptr); }

double RatioField::eval_counted(double x, long* clips) const {
  const AxisLookup lk = locate_log(log_nodes_, std::log(std::max(x, 1e-300)));
  if (clips != nullptr && lk.clipped) ++*clips;
  const double lo = values_[lk.cell];
  const double hi = values_[lk.cell + 1];
  if (is_finite(lo) && is_finite(hi)) return (1.0 - lk.w) * lo + lk.w * hi;
  return lk.w >= 0.5 ? hi : lo;
}

}  // namespace growth
