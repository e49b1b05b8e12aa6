#pragma once

#include <limits>

namespace growth {

/// Extended-real minus infinity. Zero consumption under theta <= 0 and
/// infeasible choices both map here; IEEE arithmetic propagates it through
/// sums and comparisons, so no sentinel magic numbers are needed.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return x > kNegInf && x < -kNegInf; }

/// Curvature parameter of the isoelastic utility family, restricted to
/// (-inf, 1]. theta == 0 selects logarithmic utility.
class Theta {
 public:
  explicit Theta(double value);

  double value() const { return value_; }
  bool log_case() const { return value_ == 0.0; }

 private:
  double value_;
};

/// standard:    U(c) = (c^theta - 1) / theta     (log c at theta = 0)
/// alternative: U(c) = c^theta / theta           (log c at theta = 0)
/// The standard form is normalized so that U(1) = 0 and U'(1) = 1.
enum class UtilityForm { standard, alternative };

/// Evaluate the utility of consumption c >= 0. Returns -inf when c = 0 and
/// theta <= 0; the standard form returns -1/theta at c = 0 for theta in (0,1].
double eval_utility(double c, Theta theta,
                    UtilityForm form = UtilityForm::standard);

/// U'(c) = c^(theta-1), defined for c > 0 only.
double marginal_utility(double c, Theta theta);

/// Multiplicative decomposition U(lambda*c) = phi1 * U(c) + phi2 of the
/// standard form, for lambda in (0,1]: phi1 = lambda^theta, phi2 = U(lambda).
struct ScaleDecomposition {
  double phi1;
  double phi2;
};

ScaleDecomposition scale_decomposition(double lambda, Theta theta);

/// Scaling bound coefficients for the externality return, gamma >= 0:
/// phi1 = lambda^((1+gamma)*theta), phi2 = U(lambda^(1+gamma)).
ScaleDecomposition externality_scale_decomposition(double lambda, Theta theta,
                                                   double gamma);

/// Central-difference residual of U''(c) + ((1-theta)/c) U'(c), which the
/// isoelastic family satisfies exactly. Spacing is step*c (relative), so the
/// stencil stays inside (0, inf). Requires 0 < step < c.
double bvp_residual(double c, Theta theta, double step);

}  // namespace growth
