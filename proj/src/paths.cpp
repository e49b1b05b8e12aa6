#include "growth/paths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "growth/verify.hpp"

namespace growth {

Path simulate(const PolicyField& policy, State start, int T,
              const ModelParams& params) {
  if (T < 1) throw std::invalid_argument("simulate: horizon must be positive");
  Path path;
  path.states.reserve(T + 1);
  path.states.push_back(start);
  State cur = start;
  for (int t = 0; t < T; ++t) {
    bool left = false;
    auto [kp, hp] = policy.eval(cur.k, cur.h, &left);
    if (left) ++path.hull_exits;
    const Bounds b = feasible_bounds(cur, params);
    const double kp_c = std::clamp(kp, 0.0, b.k_max);
    const double hp_c = std::clamp(hp, 0.0, b.h_max);
    if (kp_c != kp || hp_c != hp) ++path.clamped_transitions;
    const State next{kp_c, hp_c};
    const double u = psi(cur.h, next.h, params);
    const double c = consumption(cur, next, params);
    path.controls.push_back({c, u, 1.0 - u});
    path.utilities.push_back(c < 0.0 ? kNegInf
                                     : eval_utility(c, params.theta));
    path.states.push_back(next);
    cur = next;
  }
  return path;
}

Path simulate_forced(State start, int T, double market_time_u,
                     const ModelParams& params, double consume_fraction) {
  if (T < 1) throw std::invalid_argument("simulate_forced: horizon must be positive");
  if (!(market_time_u >= 0.0) || !(market_time_u <= 1.0)) {
    throw std::invalid_argument("simulate_forced: u must be in [0,1]");
  }
  if (!(consume_fraction > 0.0) || !(consume_fraction < 1.0)) {
    throw std::invalid_argument("simulate_forced: consume_fraction in (0,1)");
  }
  const double u = market_time_u;
  const double v = 1.0 - u;
  const double growth = params.B * params.phi(v) + (1.0 - params.delta_h);

  Path path;
  path.states.reserve(T + 1);
  path.states.push_back(start);
  State cur = start;
  for (int t = 0; t < T; ++t) {
    const double output = params.A * std::pow(cur.k, params.alpha) *
                          std::pow(u, 1.0 - params.alpha) *
                          std::pow(cur.h, params.h_exponent());
    const double resources = output + (1.0 - params.delta_k) * cur.k;
    const double c = consume_fraction * resources;
    const State next{(resources - c) / (1.0 + params.n), growth * cur.h};
    path.controls.push_back({c, u, v});
    path.utilities.push_back(c > 0.0 || params.theta.value() > 0.0
                                 ? eval_utility(std::max(c, 0.0), params.theta)
                                 : kNegInf);
    path.states.push_back(next);
    cur = next;
  }
  return path;
}

ConstantPathResult constant_path_value(State start, const ModelParams& params,
                                       int horizon) {
  if (!(start.k > 0.0) || !(start.h > 0.0)) {
    throw std::invalid_argument("constant_path_value: start must be interior");
  }
  if (horizon < 1) {
    throw std::invalid_argument("constant_path_value: horizon must be >= 1");
  }
  const double ub = max_market_time(params);  // throws when H2 fails
  const double vb = 1.0 - ub;
  const double k0 = start.k;
  const double h0 = start.h;
  const double nd = params.n + params.delta_k;
  const double beta = params.beta;

  // Stationary-h output with market time u_bar; the h exponent carries the
  // externality when gamma > 0.
  auto output_at = [&](double k) {
    return params.A * std::pow(k, params.alpha) *
           std::pow(ub, 1.0 - params.alpha) *
           std::pow(h0, params.h_exponent());
  };

  ConstantPathResult res;
  res.threshold = std::pow(params.A / nd, 1.0 / (1.0 - params.alpha)) * ub *
                  std::pow(h0, params.rho());

  auto push_period = [&](State nxt, double c) {
    res.path.controls.push_back({c, ub, vb});
    res.path.utilities.push_back(eval_utility(c, params.theta));
    res.path.states.push_back(nxt);
  };

  res.path.states.push_back(start);
  if (k0 < res.threshold) {
    const double c0 = output_at(k0) - nd * k0;
    res.value = eval_utility(c0, params.theta) / (1.0 - beta);
    for (int t = 0; t < horizon; ++t) push_period({k0, h0}, c0);
  } else {
    res.two_phase = true;
    const double kbar =
        std::min((output_at(k0) + (1.0 - params.delta_k) * k0) / (1.0 + params.n),
                 res.threshold);
    const double k1 = 0.5 * kbar;
    const double c0 =
        output_at(k0) + (1.0 - params.delta_k) * k0 - (1.0 + params.n) * k1;
    const double c1 = output_at(k1) - nd * k1;
    res.value = eval_utility(c0, params.theta) +
                beta / (1.0 - beta) * eval_utility(c1, params.theta);
    push_period({k1, h0}, c0);
    for (int t = 1; t < horizon; ++t) push_period({k1, h0}, c1);
  }
  return res;
}

DiscountedSum discounted_sum(const Path& path, const ModelParams& params) {
  if (path.utilities.empty()) {
    throw std::invalid_argument("discounted_sum: empty path");
  }
  DiscountedSum out;
  double bt = 1.0;
  for (double f : path.utilities) {
    if (!is_finite(f)) {
      throw std::domain_error("discounted_sum: path has -inf utility");
    }
    out.partial += bt * f;
    bt *= params.beta;
  }
  const AssumptionReport r = compute_constants(params);
  const double bz = r.beta_zeta;
  const double norm0 = path.states.front().k + path.states.front().h;
  const int T = static_cast<int>(path.utilities.size());
  out.upper_tail_bound =
      bz < 1.0 ? r.eta * (1.0 + r.zeta) * norm0 * std::pow(bz, T + 1) / (1.0 - bz)
               : -kNegInf;
  return out;
}

double shifted_lower_bound(const Path& path, const ModelParams& params,
                           double epsilon) {
  if (params.theta.value() > 0.0) {
    throw std::domain_error(
        "shifted_lower_bound: theta > 0 is already bounded below by -1/theta");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("shifted_lower_bound: epsilon must be > 0");
  }
  if (path.controls.empty()) {
    throw std::invalid_argument("shifted_lower_bound: empty path");
  }
  const Theta shifted(params.theta.value() - epsilon);
  double sum = 0.0;
  double bt = 1.0;
  for (const Path::Control& ctl : path.controls) {
    if (!(ctl.c > 0.0)) {
      throw std::domain_error(
          "shifted_lower_bound: needs strictly positive consumption");
    }
    sum += bt * eval_utility(ctl.c, shifted);
    bt *= params.beta;
  }
  // Tail closure: hold the final consumption level fixed. Exact for the
  // eventually-constant plans this bound certifies.
  sum += bt * eval_utility(path.controls.back().c, shifted) /
         (1.0 - params.beta);
  return sum;
}

const char* to_string(GrowthLabel label) {
  switch (label) {
    case GrowthLabel::sustained_growth: return "sustained-growth";
    case GrowthLabel::degrowth: return "degrowth";
    case GrowthLabel::stationary: return "stationary";
    case GrowthLabel::mixed: return "mixed";
  }
  return "?";
}

namespace {

struct SeriesDiag {
  double geo_mean = 1.0;
  GrowthLabel label = GrowthLabel::stationary;
};

SeriesDiag classify_rates(const std::vector<double>& series) {
  SeriesDiag d;
  const int rates = static_cast<int>(series.size()) - 1;
  if (rates < 1) return d;
  const int start = rates - std::max(1, rates / 4);  // last quartile
  constexpr double tol = 1e-6;
  bool all_up = true, all_down = true, all_flat = true;
  double log_acc = 0.0;
  int count = 0;
  for (int t = start; t < rates; ++t) {
    const double a = series[t], b = series[t + 1];
    const double g = (a == 0.0 && b == 0.0) ? 1.0 : b / a;
    log_acc += std::log(g);
    ++count;
    if (!(g > 1.0 + tol)) all_up = false;
    if (!(g < 1.0 - tol)) all_down = false;
    if (std::abs(g - 1.0) > tol) all_flat = false;
  }
  d.geo_mean = std::exp(log_acc / count);
  d.label = all_flat  ? GrowthLabel::stationary
            : all_up   ? GrowthLabel::sustained_growth
            : all_down ? GrowthLabel::degrowth
                       : GrowthLabel::mixed;
  return d;
}

}  // namespace

GrowthReport growth_diagnostics(const Path& path) {
  if (path.states.size() < 3) {
    throw std::invalid_argument("growth_diagnostics: path too short");
  }
  std::vector<double> ks, hs, cs;
  ks.reserve(path.states.size());
  hs.reserve(path.states.size());
  for (const State& s : path.states) {
    ks.push_back(s.k);
    hs.push_back(s.h);
  }
  cs.reserve(path.controls.size());
  for (const Path::Control& ctl : path.controls) cs.push_back(ctl.c);

  GrowthReport r;
  const SeriesDiag dk = classify_rates(ks);
  const SeriesDiag dh = classify_rates(hs);
  const SeriesDiag dc = classify_rates(cs);
  r.g_k = dk.geo_mean;
  r.g_h = dh.geo_mean;
  r.g_c = dc.geo_mean;
  r.label_k = dk.label;
  r.label_h = dh.label;
  r.label_c = dc.label;
  r.classification = dh.label;
  return r;
}

std::string GrowthReport::to_text() const {
  std::ostringstream os;
  os << "classification: " << growth::to_string(classification)
     << " (g_h = " << g_h << ", g_k = " << g_k << ", g_c = " << g_c << ")";
  return os.str();
}

TransversalityReport transversality_diagnostic(const Path& path,
                                               const ValueField& v,
                                               const ModelParams& params) {
  constexpr double tol = 1e-4;
  TransversalityReport r;
  r.discounted_values.reserve(path.states.size());
  double bt = 1.0;
  for (const State& s : path.states) {
    const double val = v.eval(s.k, s.h);
    if (!is_finite(val)) r.applicable = false;
    r.discounted_values.push_back(bt * val);
    bt *= params.beta;
  }
  r.finite_value_path = !path.utilities.empty();
  for (double f : path.utilities) {
    if (!is_finite(f)) r.finite_value_path = false;
  }
  if (!r.applicable) return r;
  const double last = r.discounted_values.back();
  r.s1_pass = last <= tol;
  r.s2_pass = !r.finite_value_path || std::abs(last) <= tol;
  return r;
}

std::string TransversalityReport::to_text() const {
  std::ostringstream os;
  if (!applicable) {
    os << "transversality: not applicable (value -inf along the path)";
    return os.str();
  }
  os << "transversality: S1 " << (s1_pass ? "pass" : "FAIL") << ", S2 "
     << (s2_pass ? "pass" : "FAIL") << " (final beta^t V = "
     << (discounted_values.empty() ? 0.0 : discounted_values.back()) << ")";
  return os.str();
}

}  // namespace growth
