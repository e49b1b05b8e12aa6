#pragma once

#include <string>
#include <vector>

#include "growth/grid.hpp"
#include "growth/model.hpp"

namespace growth {

/// A simulated state trajectory with the controls (c, u, v) and per-period
/// utilities along it. Consecutive states always satisfy the feasibility
/// correspondence (choices are clamped into the box when needed); hull_exits
/// counts the periods where a policy lookup left the grid hull.
struct Path {
  struct Control {
    double c = 0.0;
    double u = 0.0;
    double v = 0.0;
  };

  std::vector<State> states;        // length T+1
  std::vector<Control> controls;    // length T
  std::vector<double> utilities;    // length T, extended reals
  bool feasible = true;
  int hull_exits = 0;
  int clamped_transitions = 0;
};

/// Roll a solved policy forward T periods from start, interpolating the
/// per-node maximizers. Hull exits and feasibility clamps are flagged, not
/// fatal.
Path simulate(const PolicyField& policy, State start, int T,
              const ModelParams& params);

/// Roll a fixed market-time share forward: h' follows the accumulation rule
/// with v = 1 - u, and a fraction of available resources is consumed each
/// period (the rest is carried as capital). Used for the forced-control
/// growth, stationarity and degrowth scenarios.
Path simulate_forced(State start, int T, double market_time_u,
                     const ModelParams& params, double consume_fraction = 0.5);

struct ConstantPathResult {
  double value = kNegInf;
  Path path;
  bool two_phase = false;   // capital had to be worked down first
  double threshold = 0.0;   // largest k0 admitting the one-phase construction
};

/// Value of the explicit stationary-human-capital feasible plan: u = u_bar
/// forever. If k0 is small enough the plan is fully stationary with value
/// U(c0)/(1-beta); otherwise one transition period k0 -> k1 = kbar/2 precedes
/// the stationary phase. Always finite; rejects starts on the axes.
ConstantPathResult constant_path_value(State start, const ModelParams& params,
                                       int horizon = 64);

struct DiscountedSum {
  double partial = 0.0;          // sum of beta^t F_t over the path horizon
  double upper_tail_bound = 0.0; // bound on the positive part of the tail
};

/// Discounted utility along a path plus the geometric tail bound
/// eta*(1+zeta)*(k0+h0)*(beta*zeta)^(T+1)/(1-beta*zeta). The bound controls
/// only the positive tail; returns are unbounded below for theta <= 0.
/// Rejects paths containing -inf utilities.
DiscountedSum discounted_sum(const Path& path, const ModelParams& params);

/// Lower bound on discounted utility obtained by dropping the curvature
/// parameter to theta - epsilon (utility is nondecreasing in theta). The
/// truncated sum is closed with a tail that holds the final consumption
/// level fixed, which is exact for the eventually-constant plans this bound
/// is used with. Requires theta <= 0, epsilon > 0 and strictly positive
/// consumption along the path.
double shifted_lower_bound(const Path& path, const ModelParams& params,
                           double epsilon);

enum class GrowthLabel { sustained_growth, degrowth, stationary, mixed };

const char* to_string(GrowthLabel label);

/// Gross growth rates over the last quartile of the path and a per-series
/// classification with relative threshold 1e-6. The headline label follows
/// human capital, the engine of long-run growth here.
struct GrowthReport {
  double g_k = 1.0;  // geometric mean gross rates, last quartile
  double g_h = 1.0;
  double g_c = 1.0;
  GrowthLabel label_k = GrowthLabel::stationary;
  GrowthLabel label_h = GrowthLabel::stationary;
  GrowthLabel label_c = GrowthLabel::stationary;
  GrowthLabel classification = GrowthLabel::stationary;
  std::string to_text() const;
};

GrowthReport growth_diagnostics(const Path& path);

/// The sequence beta^t V(k_t, h_t) along a path, with verdicts for the two
/// limit conditions that pin the value function down: limsup <= 0 always,
/// and -> 0 on finite-value paths. Tolerance 1e-4 at the horizon.
struct TransversalityReport {
  std::vector<double> discounted_values;
  bool applicable = true;  // false when V = -inf somewhere along the path
  bool s1_pass = false;    // limsup beta^t V <= 0
  bool s2_pass = false;    // beta^t V -> 0 (finite-value paths)
  bool finite_value_path = false;
  std::string to_text() const;
};

TransversalityReport transversality_diagnostic(const Path& path,
                                               const ValueField& v,
                                               const ModelParams& params);

}  // namespace growth
