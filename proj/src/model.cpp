#include "growth/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace growth {

PhiSpec PhiSpec::power(double sigma) {
  if (!(sigma > 0.0) || !(sigma <= 1.0)) {
    throw std::invalid_argument("PhiSpec::power: sigma must be in (0,1]");
  }
  return PhiSpec(sigma);
}

double PhiSpec::operator()(double v) const {
  if (!(v >= 0.0) || !(v <= 1.0)) {
    throw std::invalid_argument("PhiSpec: argument must be in [0,1]");
  }
  return is_linear() ? v : std::pow(v, sigma_);
}

double PhiSpec::inverse(double y) const {
  const double top = 1.0;  // phi(1) = 1 for both families
  if (y < -kFeasibilitySlack || y > top + kFeasibilitySlack) {
    throw std::invalid_argument("PhiSpec::inverse: argument outside [0, phi(1)]");
  }
  y = std::clamp(y, 0.0, top);
  return is_linear() ? y : std::pow(y, 1.0 / sigma_);
}

std::string PhiSpec::to_string() const {
  if (is_linear()) return "linear";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), sigma_);
  return "power:" + std::string(buf, res.ptr);
}

PhiSpec PhiSpec::parse(std::string_view text) {
  if (text == "linear") return linear();
  constexpr std::string_view prefix = "power:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string arg(text.substr(prefix.size()));
    try {
      return power(std::stod(arg));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("PhiSpec::parse: bad exponent '" + arg + "'");
    }
  }
  throw std::invalid_argument("PhiSpec::parse: expected 'linear' or 'power:<sigma>', got '" +
                              std::string(text) + "'");
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("ModelParams: ") + what);
  };
  require(A > 0.0 && std::isfinite(A), "A must be positive");
  require(alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
  require(beta > 0.0 && beta < 1.0, "beta must be in (0,1)");
  require(n >= 0.0 && std::isfinite(n), "n must be >= 0");
  require(delta_k > 0.0 && delta_k < 1.0, "delta_k must be in (0,1)");
  require(delta_h > 0.0 && delta_h < 1.0, "delta_h must be in (0,1)");
  require(B > 0.0 && std::isfinite(B), "B must be positive");
  require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be >= 0");
}

double critical_v(const ModelParams& params) {
  const double target = params.delta_h / params.B;
  if (!(target < params.phi(1.0))) {
    throw std::domain_error(
        "critical_v: B*phi(1) <= delta_h, no interior root (H2 fails)");
  }
  return params.phi.inverse(target);
}

double max_market_time(const ModelParams& params) {
  return 1.0 - critical_v(params);
}

namespace {

// Shared branch logic for the market-time share: ratio r = h_next/h, inner
// exponent s (1 in natural coordinates, 1/rho in transformed ones).
double time_share_from_ratio(double r, double s, const ModelParams& params,
                             double g_lo, double g_hi) {
  if (r <= g_lo) return 1.0;
  if (r > g_hi * (1.0 + 1e-12) + kFeasibilitySlack) {
    throw std::domain_error("time share: human-capital growth above ceiling");
  }
  const double powered = s == 1.0 ? r : std::pow(r, s);
  double y = (powered - (1.0 - params.delta_h)) / params.B;
  y = std::clamp(y, 0.0, params.phi(1.0));
  return 1.0 - params.phi.inverse(y);
}

}  // namespace

double psi(double h, double h_next, const ModelParams& params) {
  if (!(h >= 0.0) || !(h_next >= 0.0)) {
    throw std::invalid_argument("psi: states must be nonnegative");
  }
  if (h == 0.0) return 1.0;
  return time_share_from_ratio(h_next / h, 1.0, params, 1.0 - params.delta_h,
                               params.max_h_growth());
}

double hhat_transform(double h, const ModelParams& params) {
  if (!(h >= 0.0)) throw std::invalid_argument("hhat_transform: h must be >= 0");
  const double rho = params.rho();
  return rho == 1.0 ? h : std::pow(h, rho);
}

double hhat_inverse(double hhat, const ModelParams& params) {
  if (!(hhat >= 0.0)) {
    throw std::invalid_argument("hhat_inverse: hhat must be >= 0");
  }
  const double rho = params.rho();
  return rho == 1.0 ? hhat : std::pow(hhat, 1.0 / rho);
}

double psi_rho(double hhat, double hhat_next, const ModelParams& params) {
  if (!(hhat >= 0.0) || !(hhat_next >= 0.0)) {
    throw std::invalid_argument("psi_rho: states must be nonnegative");
  }
  if (hhat == 0.0) return 1.0;
  const double rho = params.rho();
  const double g_lo = std::pow(1.0 - params.delta_h, rho);
  const double g_hi = std::pow(params.max_h_growth(), rho);
  return time_share_from_ratio(hhat_next / hhat, 1.0 / rho, params, g_lo, g_hi);
}

Bounds feasible_bounds(const State& state, const ModelParams& params) {
  const double output = params.A * std::pow(state.k, params.alpha) *
                        std::pow(state.h, params.h_exponent());
  return {(output + (1.0 - params.delta_k) * state.k) / (1.0 + params.n),
          params.max_h_growth() * state.h};
}

bool in_gamma(const State& state, const State& next,
              const ModelParams& params) {
  if (next.k < 0.0 || next.h < 0.0) return false;
  const Bounds b = feasible_bounds(state, params);
  return next.k <= b.k_max + kFeasibilitySlack &&
         next.h <= b.h_max + kFeasibilitySlack;
}

double consumption(const State& state, const State& next,
                   const ModelParams& params) {
  if (!in_gamma(state, next, params)) {
    throw std::domain_error("consumption: transition outside feasibility box");
  }
  const double linear =
      (1.0 - params.delta_k) * state.k - (1.0 + params.n) * next.k;
  if (state.k == 0.0 || state.h == 0.0) {
    return std::max(0.0, linear);
  }
  const double u = psi(state.h, next.h, params);
  const double output = params.A * std::pow(state.k, params.alpha) *
                        std::pow(u, 1.0 - params.alpha) *
                        std::pow(state.h, params.h_exponent());
  return output + linear;
}

double return_F(const State& state, const State& next,
                const ModelParams& params) {
  const double c = consumption(state, next, params);
  if (c < 0.0) return kNegInf;
  return eval_utility(c, params.theta);
}

Economy::Economy(const ModelParams& params, bool transformed)
    : params_(params), transformed_(transformed) {
  params_.validate();
  if (transformed_) {
    const double rho = params_.rho();
    h_exp_ = 1.0 - params_.alpha;
    ratio_exp_ = 1.0 / rho;
    g_lo_ = std::pow(1.0 - params_.delta_h, rho);
    g_hi_ = std::pow(params_.max_h_growth(), rho);
  } else {
    h_exp_ = params_.h_exponent();
    ratio_exp_ = 1.0;
    g_lo_ = 1.0 - params_.delta_h;
    g_hi_ = params_.max_h_growth();
  }
}

Economy Economy::direct(const ModelParams& params) {
  return Economy(params, false);
}

Economy Economy::transformed(const ModelParams& params) {
  return Economy(params, true);
}

Bounds Economy::bounds(double k, double h) const {
  const double output = gross_output(k, h);
  return {(output + (1.0 - params_.delta_k) * k) / (1.0 + params_.n),
          g_hi_ * h};
}

bool Economy::in_feasible(const State& state, const State& next) const {
  if (next.k < 0.0 || next.h < 0.0) return false;
  const Bounds b = bounds(state.k, state.h);
  return next.k <= b.k_max + kFeasibilitySlack &&
         next.h <= b.h_max + kFeasibilitySlack;
}

double Economy::market_time(double h, double h_next) const {
  if (h <= 0.0) return 1.0;
  return time_share_from_ratio(h_next / h, ratio_exp_, params_, g_lo_, g_hi_);
}

double Economy::gross_output(double k, double h) const {
  return params_.A * std::pow(k, params_.alpha) * std::pow(h, h_exp_);
}

double Economy::consumption(double k, double h, double k_next,
                            double h_next) const {
  const double linear =
      (1.0 - params_.delta_k) * k - (1.0 + params_.n) * k_next;
  if (k == 0.0 || h == 0.0) return std::max(0.0, linear);
  const double u = market_time(h, h_next);
  const double output = params_.A * std::pow(k, params_.alpha) *
                        std::pow(u, 1.0 - params_.alpha) * std::pow(h, h_exp_);
  return output + linear;
}

double Economy::utility_of(double c) const {
  if (c < 0.0) return kNegInf;
  return eval_utility(c, params_.theta);
}

double Economy::return_value(double k, double h, double k_next,
                             double h_next) const {
  return utility_of(consumption(k, h, k_next, h_next));
}

double Economy::growth_constant() const {
  const double a = transformed_ ? params_.alpha
                                : (params_.gamma == 0.0 ? params_.alpha
                                                        : params_.omega());
  const double xi =
      std::max((a * params_.A + (1.0 - params_.delta_k)) / (1.0 + params_.n),
               (1.0 - a) * params_.A / (1.0 + params_.n));
  return std::max(xi, g_hi_);
}

}  // namespace growth
