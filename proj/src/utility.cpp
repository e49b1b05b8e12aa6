#include "growth/utility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace growth {

Theta::Theta(double value) : value_(value) {
  if (!(value <= 1.0) || !std::isfinite(value)) {
    throw std::invalid_argument("Theta: value must be finite and <= 1, got " +
                                std::to_string(value));
  }
}

double eval_utility(double c, Theta theta, UtilityForm form) {
  if (!(c >= 0.0)) {
    throw std::invalid_argument("eval_utility: consumption must be >= 0");
  }
  if (theta.log_case()) {
    return c > 0.0 ? std::log(c) : kNegInf;
  }
  const double th = theta.value();
  if (c == 0.0) {
    if (th < 0.0) return kNegInf;
    return form == UtilityForm::standard ? -1.0 / th : 0.0;
  }
  if (form == UtilityForm::standard) {
    // expm1 keeps (c^theta - 1)/theta accurate down to theta -> 0
    return std::expm1(th * std::log(c)) / th;
  }
  return std::pow(c, th) / th;
}

double marginal_utility(double c, Theta theta) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("marginal_utility: consumption must be > 0");
  }
  return std::pow(c, theta.value() - 1.0);
}

ScaleDecomposition scale_decomposition(double lambda, Theta theta) {
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw std::invalid_argument("scale_decomposition: lambda must be in (0,1]");
  }
  const double phi1 = theta.log_case() ? 1.0 : std::pow(lambda, theta.value());
  return {phi1, eval_utility(lambda, theta)};
}

ScaleDecomposition externality_scale_decomposition(double lambda, Theta theta,
                                                   double gamma) {
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw std::invalid_argument(
        "externality_scale_decomposition: lambda must be in (0,1]");
  }
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument(
        "externality_scale_decomposition: gamma must be >= 0");
  }
  const double scaled = std::pow(lambda, 1.0 + gamma);
  const double phi1 =
      theta.log_case() ? 1.0 : std::pow(lambda, (1.0 + gamma) * theta.value());
  return {phi1, eval_utility(scaled, theta)};
}

double bvp_residual(double c, Theta theta, double step) {
  if (!(c > 0.0) || !(step > 0.0) || !(step < c)) {
    throw std::invalid_argument("bvp_residual: need c > step > 0");
  }
  const double h = step * c;
  const double um = eval_utility(c - h, theta);
  const double u0 = eval_utility(c, theta);
  const double up = eval_utility(c + h, theta);
  const double d1 = (up - um) / (2.0 * h);
  const double d2 = (up - 2.0 * u0 + um) / (h * h);
  return d2 + (1.0 - theta.value()) / c * d1;
}

}  // namespace growth
