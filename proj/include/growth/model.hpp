#pragma once

#include <string>
#include <string_view>

#include "growth/utility.hpp"

namespace growth {

/// Absolute slack on feasibility-boundary membership, so grid nodes landing
/// exactly on a bound still count as feasible.
inline constexpr double kFeasibilitySlack = 1e-12;

/// Study-time effectiveness phi on [0,1]: either phi(v) = v or the concave
/// power family phi(v) = v^sigma with sigma in (0,1]. Both have closed-form
/// inverses, which keeps the implied market-time share exact.
class PhiSpec {
 public:
  static PhiSpec linear() { return PhiSpec(1.0); }
  static PhiSpec power(double sigma);

  double operator()(double v) const;
  /// Inverse on [0, phi(1)]; arguments are clamped into the range to absorb
  /// roundoff at branch boundaries.
  double inverse(double y) const;

  bool is_linear() const { return sigma_ == 1.0; }
  double sigma() const { return sigma_; }

  std::string to_string() const;
  static PhiSpec parse(std::string_view text);

 private:
  explicit PhiSpec(double sigma) : sigma_(sigma) {}
  double sigma_;
};

/// Structural parameters of the two-sector growth model. Field defaults are
/// the baseline calibration. Range constraints are enforced by validate();
/// the technology assumption B*phi(1) > delta_h is reported through the
/// verify module (and enforced by the operations that need it) so that a
/// violating parameter set can still be constructed and diagnosed.
struct ModelParams {
  double A = 1.0;         // total factor productivity, > 0
  double alpha = 0.3;     // capital share, in (0,1)
  double beta = 0.8;      // discount factor, in (0,1)
  double n = 0.02;        // population growth rate, >= 0
  double delta_k = 0.1;   // physical capital depreciation, in (0,1)
  double delta_h = 0.05;  // human capital depreciation, in (0,1)
  double B = 0.1;         // study-time productivity, > 0
  double gamma = 0.0;     // human capital externality exponent, >= 0
  Theta theta{0.0};
  PhiSpec phi = PhiSpec::linear();

  void validate() const;  // throws std::invalid_argument on a range violation

  /// Maximum gross growth factor of human capital, B*phi(1) + (1-delta_h).
  double max_h_growth() const { return B * phi(1.0) + (1.0 - delta_h); }
  /// Change-of-variables exponent (1-alpha+gamma)/(1-alpha) >= 1.
  double rho() const { return (1.0 - alpha + gamma) / (1.0 - alpha); }
  /// alpha/(1+gamma), the capital weight after absorbing the externality.
  double omega() const { return alpha / (1.0 + gamma); }
  /// Exponent on h in output once the externality is internalized.
  double h_exponent() const { return 1.0 - alpha + gamma; }
  bool h2_holds() const { return B * phi(1.0) > delta_h; }
};

struct State {
  double k = 0.0;
  double h = 0.0;
};

/// Minimum study time v with B*phi(v) = delta_h: below it human capital
/// shrinks, above it grows. Throws std::domain_error if B*phi(1) <= delta_h.
double critical_v(const ModelParams& params);

/// Maximum market time compatible with constant human capital,
/// 1 - phi^{-1}(delta_h / B).
double max_market_time(const ModelParams& params);

/// Market-time share implied by the transition h -> h_next: 1 on the branch
/// h_next <= (1-delta_h)*h, otherwise the inverse of the accumulation rule.
/// psi(0, .) = 1. Throws on h_next > max_h_growth()*h.
double psi(double h, double h_next, const ModelParams& params);

/// h^rho and its inverse; rho = 1 (identity) when gamma = 0.
double hhat_transform(double h, const ModelParams& params);
double hhat_inverse(double hhat, const ModelParams& params);

/// Market-time share in transformed coordinates; satisfies
/// psi_rho(h^rho, h'^rho) = psi(h, h').
double psi_rho(double hhat, double hhat_next, const ModelParams& params);

struct Bounds {
  double k_max = 0.0;
  double h_max = 0.0;
};

/// Upper corners of the feasibility box from a given state:
/// k' <= (A k^a h^(1-a+g) + (1-delta_k) k) / (1+n), h' <= max_h_growth()*h.
Bounds feasible_bounds(const State& state, const ModelParams& params);

/// Membership in the feasibility box, with kFeasibilitySlack on the bounds.
bool in_gamma(const State& state, const State& next, const ModelParams& params);

/// Consumption implied by a feasible transition. Interior states return the
/// raw value (possibly <= 0, signalling that the choice starves consumption);
/// the degenerate k = 0 or h = 0 branch clamps at zero. Throws on an
/// infeasible transition.
double consumption(const State& state, const State& next,
                   const ModelParams& params);

/// One-period return U(consumption). Negative consumption maps to -inf for
/// every theta; zero consumption to -inf when theta <= 0.
double return_F(const State& state, const State& next,
                const ModelParams& params);

/// Uniform view of the planner's one-period problem, covering the direct
/// model (any gamma >= 0) and the change-of-variables model on (k, h^rho),
/// which restores degree-one homogeneity when gamma > 0. Both reduce to
///
///   c = A k^alpha u^(1-alpha) h^e + (1-delta_k) k - (1+n) k',
///   u = 1 - phi^{-1}[((h'/h)^s - (1-delta_h)) / B]   (1 below the kink),
///
/// with (e, s) = (1-alpha+gamma, 1) for the direct model and (1-alpha, 1/rho)
/// in transformed coordinates. All methods are pure; instances are safe to
/// share across threads.
class Economy {
 public:
  static Economy direct(const ModelParams& params);
  static Economy transformed(const ModelParams& params);

  Bounds bounds(double k, double h) const;
  bool in_feasible(const State& state, const State& next) const;

  /// Market-time share for h -> h_next in this economy's coordinates.
  double market_time(double h, double h_next) const;
  double consumption(double k, double h, double k_next, double h_next) const;
  double return_value(double k, double h, double k_next, double h_next) const;
  /// Output with full market time, A k^alpha h^e.
  double gross_output(double k, double h) const;
  /// U(c) with the -inf conventions of return_F.
  double utility_of(double c) const;

  /// Gross growth-factor range for h in these coordinates. h_growth_lo is the
  /// kink of the market-time share (pure depreciation); h_growth_hi the
  /// feasibility ceiling.
  double h_growth_lo() const { return g_lo_; }
  double h_growth_hi() const { return g_hi_; }

  /// True when the one-period problem is homogeneous of degree one in
  /// (k, h, k', h'): gamma = 0 or transformed coordinates.
  bool homogeneous() const { return transformed_ || params_.gamma == 0.0; }
  bool is_transformed() const { return transformed_; }

  /// Growth constant ruling the discount condition beta*zeta < 1 for this
  /// economy: max of the capital bound coefficient and the h ceiling.
  double growth_constant() const;

  const ModelParams& params() const { return params_; }
  const Theta& theta() const { return params_.theta; }
  double discount() const { return params_.beta; }

 private:
  Economy(const ModelParams& params, bool transformed);

  ModelParams params_;
  bool transformed_;
  double h_exp_;         // exponent on h in output
  double ratio_exp_;     // s above: 1 direct, 1/rho transformed
  double g_lo_, g_hi_;   // gross growth factor range for h
};

}  // namespace growth
