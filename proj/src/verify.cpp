#include "growth/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace growth {

double power_mean(const WeightedSample& sample, double p) {
  const auto& x = sample.values;
  const auto& w = sample.weights;
  if (x.empty()) throw std::invalid_argument("power_mean: empty sample");
  if (x.size() != w.size()) {
    throw std::invalid_argument("power_mean: values/weights length mismatch");
  }
  double total_w = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(w[i] > 0.0)) {
      throw std::invalid_argument("power_mean: entries must be positive");
    }
    total_w += w[i];
  }
  if (p == 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::log(x[i]);
    return std::exp(acc / total_w);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], p);
  return std::pow(acc / total_w, 1.0 / p);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "n/a";
  }
  return "?";
}

bool AssumptionReport::all_pass() const {
  for (const auto& [name, check] : verdicts) {
    if (check.verdict == Verdict::fail) return false;
  }
  return true;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string AssumptionReport::to_text() const {
  std::ostringstream os;
  os << "constants:\n";
  os << "  D_h        = " << fmt(D_h) << "\n";
  os << "  v_bar      = " << fmt(v_bar) << "\n";
  os << "  u_bar      = " << fmt(u_bar) << "\n";
  os << "  xi         = " << fmt(xi) << "\n";
  os << "  xi_hat     = " << fmt(xi_hat) << "\n";
  os << "  zeta       = " << fmt(zeta) << "\n";
  os << "  beta_zeta  = " << fmt(beta_zeta) << "\n";
  os << "  eta        = " << fmt(eta) << "\n";
  os << "  rho        = " << fmt(rho) << "\n";
  os << "  omega      = " << fmt(omega) << "\n";
  os << "  zeta_rho   = " << fmt(zeta_rho) << "\n";
  os << "  beta_zeta_rho = " << fmt(beta_zeta_rho) << "\n";
  os << "continuity mode: "
     << (continuity_mode == ContinuityMode::scaling_a6 ? "A6 (scaling)"
                                                       : "A7 (lower bound)")
     << "\n";
  os << "checks:\n";
  for (const auto& [name, check] : verdicts) {
    os << "  " << name << ": " << to_string(check.verdict);
    if (!check.detail.empty()) os << " (" << check.detail << ")";
    os << "\n";
  }
  os << (all_pass() ? "all checks pass" : "CHECK FAILURE") << "\n";
  return os.str();
}

std::string AssumptionReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\n";
  auto field = [&os](const char* name, double v, bool comma = true) {
    os << "  \"" << name << "\": " << v << (comma ? ",\n" : "\n");
  };
  field("D_h", D_h);
  field("v_bar", v_bar);
  field("u_bar", u_bar);
  field("xi", xi);
  field("xi_hat", xi_hat);
  field("zeta", zeta);
  field("beta_zeta", beta_zeta);
  field("eta", eta);
  field("rho", rho);
  field("omega", omega);
  field("zeta_rho", zeta_rho);
  field("beta_zeta_rho", beta_zeta_rho);
  os << "  \"continuity_mode\": \""
     << (continuity_mode == ContinuityMode::scaling_a6 ? "A6" : "A7")
     << "\",\n";
  os << "  \"all_pass\": " << (all_pass() ? "true" : "false") << ",\n";
  os << "  \"checks\": {\n";
  bool first = true;
  for (const auto& [name, check] : verdicts) {
    if (!first) os << ",\n";
    first = false;
    os << "    \"" << name << "\": \"" << to_string(check.verdict) << "\"";
  }
  os << "\n  }\n}\n";
  return os.str();
}

AssumptionReport compute_constants(const ModelParams& params) {
  params.validate();
  AssumptionReport r;
  r.D_h = params.max_h_growth();
  r.rho = params.rho();
  r.omega = params.omega();

  const double inv = 1.0 / (1.0 + params.n);
  auto xi_of = [&](double a) {
    return std::max((a * params.A + (1.0 - params.delta_k)) * inv,
                    (1.0 - a) * params.A * inv);
  };
  r.xi = xi_of(params.alpha);
  r.xi_hat = xi_of(params.omega());
  r.zeta = std::max(params.gamma == 0.0 ? r.xi : r.xi_hat, r.D_h);
  r.beta_zeta = params.beta * r.zeta;
  r.eta = r.zeta * (1.0 + params.n);
  r.zeta_rho = std::max(r.xi, std::pow(r.D_h, r.rho));
  r.beta_zeta_rho = params.beta * r.zeta_rho;
  r.continuity_mode = params.gamma <= 1.0 ? ContinuityMode::scaling_a6
                                          : ContinuityMode::lower_bound_a7;

  // H1: phi strictly increasing on [0,1] with phi(0) = 0. The built-in
  // families are monotone by construction; the grid scan guards parameter
  // abuse through future phi variants.
  {
    CheckResult h1{Verdict::pass, ""};
    if (params.phi(0.0) != 0.0) h1 = {Verdict::fail, "phi(0) != 0"};
    const int grid = 10000;
    double prev = params.phi(0.0);
    for (int i = 1; i <= grid && h1.verdict == Verdict::pass; ++i) {
      const double cur = params.phi(static_cast<double>(i) / grid);
      if (!(cur > prev)) h1 = {Verdict::fail, "phi not strictly increasing"};
      prev = cur;
    }
    r.verdicts["H1"] = h1;
  }

  // H2: B*phi(1) > delta_h, i.e. sustained growth is attainable.
  if (params.h2_holds()) {
    r.v_bar = critical_v(params);
    r.u_bar = max_market_time(params);
    r.verdicts["H2"] = {Verdict::pass,
                        "B*phi(1) = " + fmt(params.B * params.phi(1.0)) +
                            " > delta_h = " + fmt(params.delta_h)};
  } else {
    r.v_bar = 0.0;
    r.u_bar = 0.0;
    r.verdicts["H2"] = {Verdict::fail,
                        "B*phi(1) = " + fmt(params.B * params.phi(1.0)) +
                            " <= delta_h = " + fmt(params.delta_h)};
  }

  r.verdicts["betacond"] = {
      r.beta_zeta < 1.0 ? Verdict::pass : Verdict::fail,
      "beta*zeta = " + fmt(r.beta_zeta)};
  if (params.gamma > 0.0) {
    r.verdicts["betacond-transformed"] = {
        r.beta_zeta_rho < 1.0 ? Verdict::pass : Verdict::fail,
        "beta*zeta_rho = " + fmt(r.beta_zeta_rho)};
  } else {
    r.verdicts["betacond-transformed"] = {Verdict::not_applicable,
                                          "gamma = 0"};
  }
  return r;
}

AssumptionReport check_all(const ModelParams& params, int sample_count,
                           std::uint64_t seed) {
  AssumptionReport r = compute_constants(params);
  if (sample_count <= 0) {
    throw std::invalid_argument("check_all: sample_count must be positive");
  }
  if (!params.h2_holds()) {
    // Without H2 the time-share machinery is undefined; the sampled checks
    // cannot run.
    r.verdicts["A2"] = {Verdict::not_applicable, "H2 fails"};
    r.verdicts["A3"] = {Verdict::not_applicable, "H2 fails"};
    r.verdicts["A6-cone"] = {Verdict::not_applicable, "H2 fails"};
    return r;
  }

  // For gamma > 0 the sampled bounds are checked on the change-of-variables
  // model, whose technology is degree-one homogeneous again; there they are
  // theorems for every feasible transition. zeta_sample is that model's
  // growth constant.
  const Economy econ = params.gamma == 0.0 ? Economy::direct(params)
                                           : Economy::transformed(params);
  const double zeta_sample =
      params.gamma == 0.0 ? r.zeta : r.zeta_rho;
  const double eta_sample = zeta_sample * (1.0 + params.n);
  const std::string space =
      params.gamma == 0.0 ? "natural coordinates" : "(k, h^rho) coordinates";

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log(1e-3);
  const double log_hi = std::log(1e3);
  auto sample_state = [&]() {
    return State{std::exp(log_lo + (log_hi - log_lo) * unit(rng)),
                 std::exp(log_lo + (log_hi - log_lo) * unit(rng))};
  };

  const double lambdas[] = {0.3, 0.7, 1.0};
  long a2_viol = 0, a3_viol = 0, a6_viol = 0;
  const bool cone_applicable = params.gamma <= 1.0;

  for (int i = 0; i < sample_count; ++i) {
    const State s = sample_state();
    const Bounds b = econ.bounds(s.k, s.h);
    const State next{b.k_max * unit(rng), b.h_max * unit(rng)};

    const double norm_s = s.k + s.h;
    const double norm_n = next.k + next.h;
    const double slack = 1e-12 * (1.0 + norm_s);

    if (std::max(next.k, next.h) > zeta_sample * norm_s + slack) ++a2_viol;

    const double f = econ.return_value(s.k, s.h, next.k, next.h);
    if (f > eta_sample * (norm_s + norm_n) + slack) ++a3_viol;

    if (cone_applicable) {
      for (double lam : lambdas) {
        if (!econ.in_feasible(State{lam * s.k, lam * s.h},
                              State{lam * next.k, lam * next.h})) {
          ++a6_viol;
        }
      }
    }
  }

  auto sampled_verdict = [&](long viol, const std::string& what) {
    CheckResult c;
    c.verdict = viol == 0 ? Verdict::pass : Verdict::fail;
    c.detail = what + ": " + std::to_string(viol) + " violations in " +
               std::to_string(sample_count) + " transitions, " + space;
    return c;
  };
  r.verdicts["A2"] = sampled_verdict(a2_viol, "max(k',h') <= zeta*(k+h)");
  r.verdicts["A3"] = sampled_verdict(a3_viol, "F <= eta*(|s|+|s'|)");
  if (cone_applicable) {
    r.verdicts["A6-cone"] =
        sampled_verdict(a6_viol, "lambda-scaled transitions stay feasible");
  } else {
    r.verdicts["A6-cone"] = {Verdict::not_applicable,
                             "gamma > 1: continuity via the A7 lower bound"};
  }
  return r;
}

}  // namespace growth
