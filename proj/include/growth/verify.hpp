#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "growth/model.hpp"

namespace growth {

/// Positive values with positive weights, for the generalized mean.
struct WeightedSample {
  std::vector<double> values;
  std::vector<double> weights;
};

/// Weighted power mean M_p: ((1/w) sum w_i x_i^p)^(1/p), the weighted
/// geometric mean at p = 0. Rejects empty or mismatched samples.
double power_mean(const WeightedSample& sample, double p);

enum class Verdict { pass, fail, not_applicable };

const char* to_string(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::not_applicable;
  std::string detail;
};

/// Which argument carries the continuity of the value function: the scaling
/// route (gamma <= 1) or the shifted-curvature lower bound (any gamma).
enum class ContinuityMode { scaling_a6, lower_bound_a7 };

/// Model constants plus pass/fail verdicts for the checkable assumptions.
///
/// zeta is max(xi, D_h) at gamma = 0 and max(xi_hat, D_h) otherwise; the
/// discount condition is beta*zeta < 1. For gamma > 0 the sampled growth,
/// return-bound and scaling checks run on the change-of-variables model
/// (k, h^rho), whose growth constant zeta_rho = max(xi, D_h^rho) is reported
/// alongside: in natural coordinates those bounds are provable only on a
/// bounded region once returns are increasing.
struct AssumptionReport {
  double D_h = 0.0;
  double v_bar = 0.0;   // 0 when H2 fails (no root)
  double u_bar = 0.0;
  double xi = 0.0;
  double xi_hat = 0.0;
  double zeta = 0.0;
  double beta_zeta = 0.0;
  double rho = 1.0;
  double omega = 0.0;
  double eta = 0.0;          // zeta * (1+n)
  double zeta_rho = 0.0;     // transformed-model growth constant
  double beta_zeta_rho = 0.0;
  ContinuityMode continuity_mode = ContinuityMode::scaling_a6;
  std::map<std::string, CheckResult> verdicts;

  bool all_pass() const;
  std::string to_text() const;
  /// Flat key/value document; consumed by the CLI's report.json.
  std::string to_json() const;
};

/// Fill the constants and the arithmetic verdicts (H1, H2, betacond).
AssumptionReport compute_constants(const ModelParams& params);

/// compute_constants plus seeded randomized checks of the growth bound (A2),
/// the return bound (A3) and lambda-scaling feasibility (A6 cone) on
/// sample_count feasible transitions. Deterministic given the seed; failures
/// are verdicts, not errors.
AssumptionReport check_all(const ModelParams& params, int sample_count,
                           std::uint64_t seed);

}  // namespace growth
