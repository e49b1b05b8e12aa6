#include "growth/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growth {

namespace {

constexpr double kInvGolden = 0.6180339887498949;

// Golden-section maximization on [a, b]. Works for unimodal objectives with
// kinks and tolerates -inf plateaus at the edges of the bracket.
template <class F>
void golden_max(const F& f, double a, double b, double* x_best,
                double* f_best) {
  if (!(b > a)) {
    *x_best = a;
    *f_best = f(a);
    return;
  }
  double x1 = b - kInvGolden * (b - a);
  double x2 = a + kInvGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 64; ++i) {
    if (b - a <= 1e-12 * (1.0 + std::abs(a) + std::abs(b))) break;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvGolden * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  *x_best = x1;
  *f_best = f1;
  if (f2 > *f_best) {
    *x_best = x2;
    *f_best = f2;
  }
  if (fm > *f_best) {
    *x_best = xm;
    *f_best = fm;
  }
}

std::vector<double> uniform_lattice(double hi, int intervals) {
  std::vector<double> xs(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    xs[i] = hi * static_cast<double>(i) / intervals;
  }
  xs.back() = hi;
  return xs;
}

void insert_sorted_unique(std::vector<double>& xs, double x) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) return;
  xs.insert(it, x);
}

struct NodeBest {
  double value = kNegInf;
  double kp = 0.0;
  double hp = 0.0;
};

void consider(NodeBest& best, double value, double kp, double hp) {
  if (value > best.value ||
      (value == best.value &&
       (kp < best.kp || (kp == best.kp && hp < best.hp)))) {
    best = {value, kp, hp};
  }
}

// Continuation-value lookup with the configured out-of-hull treatment.
//
// In scale mode, points whose ray misses the hull (k' = 0, destroyed human
// capital, extreme ratios) get a worst-case stand-in: -inf for theta <= 0
// (exact at k' = 0, a dominated-candidate prune otherwise) and the global
// floor U(0)/(1-beta) for theta > 0. Clamping those lookups instead would
// hand the optimizer a free continuation at the hull boundary, and the
// resulting bias propagates through the whole grid along shrinking optimal
// paths. Ray lifts are capped so a near-origin candidate cannot blow up
// lambda^theta.
class Continuation {
 public:
  Continuation(const ValueField& v, const Economy& econ, HullRule rule)
      : v_(v),
        scale_(rule == HullRule::scale && econ.homogeneous()),
        theta_(econ.theta()),
        beta_(econ.discount()),
        k_lo_(v.grid().k_nodes.front()),
        k_hi_(v.grid().k_nodes.back()),
        h_lo_(v.grid().h_nodes.front()),
        h_hi_(v.grid().h_nodes.back()),
        worst_(theta_.value() > 0.0
                   ? eval_utility(0.0, theta_) / (1.0 - beta_)
                   : kNegInf) {}

  double eval(double kp, double hp) {
    if (kp >= k_lo_ && kp <= k_hi_ && hp >= h_lo_ && hp <= h_hi_) {
      return v_.eval(kp, hp);
    }
    if (!scale_) {
      ++clips;
      return v_.eval(std::clamp(kp, k_lo_, k_hi_),
                     std::clamp(hp, h_lo_, h_hi_));
    }
    if (kp > 0.0 && hp > 0.0) {
      const double mu_lo = std::max(k_lo_ / kp, h_lo_ / hp);
      const double mu_hi = std::min(k_hi_ / kp, h_hi_ / hp);
      if (mu_lo <= mu_hi) {
        const double mu = std::clamp(1.0, mu_lo, mu_hi);
        if (mu > 1e-3 && mu < 1e3) {
          ++extensions;
          const double lam = 1.0 / mu;
          const double weight =
              theta_.log_case() ? 1.0 : std::pow(lam, theta_.value());
          return weight * v_.eval(mu * kp, mu * hp) +
                 eval_utility(lam, theta_) / (1.0 - beta_);
        }
      }
    }
    ++fallbacks;
    return worst_;
  }

  long clips = 0;
  long extensions = 0;
  long fallbacks = 0;

 private:
  const ValueField& v_;
  bool scale_;
  Theta theta_;
  double beta_;
  double k_lo_, k_hi_, h_lo_, h_hi_;
  double worst_;
};

// Maximize F(k,h,k',h') + beta * v(k',h') over the feasibility box at one
// node. Lattice scan with the time-share kink inserted, then nested
// golden-section refinement on each coordinate.
NodeBest maximize_node(const Economy& econ, Continuation& cont, double k,
                       double h, const SolveOptions& opts) {
  const ModelParams& p = econ.params();
  const double beta = p.beta;
  const double lin = (1.0 - p.delta_k) * k;
  const double carry = 1.0 + p.n;
  const Bounds b = econ.bounds(k, h);

  std::vector<double> hs = uniform_lattice(b.h_max, opts.inner_points);
  const double kink = econ.h_growth_lo() * h;
  if (kink > 0.0 && kink < b.h_max) insert_sorted_unique(hs, kink);
  const std::vector<double> ks = uniform_lattice(b.k_max, opts.inner_points);
  const double out0 = econ.gross_output(k, h);

  auto objective = [&](double kp, double out_h, double hp) {
    const double c = out_h + lin - carry * kp;
    const double f = econ.utility_of(c);
    if (!is_finite(f)) return kNegInf;
    return f + beta * cont.eval(kp, hp);
  };

  NodeBest best;
  for (double hp : hs) {
    const double u = econ.market_time(h, hp);
    const double out_h = out0 * std::pow(u, 1.0 - p.alpha);
    for (double kp : ks) {
      consider(best, objective(kp, out_h, hp), kp, hp);
    }
  }

  if (opts.inner_search == InnerSearch::golden_section_nested &&
      is_finite(best.value)) {
    const double dk = b.k_max / opts.inner_points;
    for (int round = 0; round < 2; ++round) {
      {
        const double hp = best.hp;
        const double u = econ.market_time(h, hp);
        const double out_h = out0 * std::pow(u, 1.0 - p.alpha);
        const double lo = std::max(0.0, best.kp - dk);
        const double hi = std::min(b.k_max, best.kp + dk);
        double x, fx;
        golden_max([&](double kp) { return objective(kp, out_h, hp); }, lo, hi,
                   &x, &fx);
        if (fx > best.value) best = {fx, x, hp};
      }
      {
        const auto it = std::lower_bound(hs.begin(), hs.end(), best.hp);
        const double lo = it == hs.begin() ? hs.front() : *(it - 1);
        const double hi = (it == hs.end() || it + 1 == hs.end())
                              ? hs.back()
                              : *(it + 1);
        const double kp = best.kp;
        double x, fx;
        golden_max(
            [&](double hp) {
              const double u = econ.market_time(h, hp);
              const double out_h = out0 * std::pow(u, 1.0 - p.alpha);
              return objective(kp, out_h, hp);
            },
            lo, hi, &x, &fx);
        if (fx > best.value) best = {fx, kp, x};
      }
    }
  }
  return best;
}

}  // namespace

std::pair<ValueField, PolicyField> bellman_backup(const ValueField& v,
                                                  const Economy& econ,
                                                  const SolveOptions& opts,
                                                  BackupStats* stats) {
  const GridSpec& grid = v.grid();
  ValueField out(grid, kNegInf);
  PolicyField pol(grid);
  Continuation cont(v, econ, opts.hull_rule);
  int dead = 0;
  for (int i = 0; i < grid.nk(); ++i) {
    for (int j = 0; j < grid.nh(); ++j) {
      const double k = grid.k_nodes[i];
      const double h = grid.h_nodes[j];
      const NodeBest best = maximize_node(econ, cont, k, h, opts);
      out.at(i, j) = best.value;
      const int n = pol.idx(i, j);
      pol.k_next[n] = best.kp;
      pol.h_next[n] = best.hp;
      pol.u[n] = econ.market_time(h, best.hp);
      pol.v[n] = 1.0 - pol.u[n];
      pol.c[n] = econ.consumption(k, h, best.kp, best.hp);
      if (!is_finite(best.value)) ++dead;
    }
  }
  if (stats != nullptr) {
    stats->clip_events += cont.clips;
    stats->extension_events += cont.extensions;
    stats->dead_nodes = dead;
  }
  return {std::move(out), std::move(pol)};
}

namespace {

void require_discount_condition(const Economy& econ) {
  const double bz = econ.discount() * econ.growth_constant();
  if (!(bz < 1.0)) {
    throw std::domain_error(
        "solver: discount condition beta*zeta < 1 fails (beta*zeta = " +
        std::to_string(bz) + ")");
  }
}

}  // namespace

SolveResult solve_value_iteration(const Economy& econ, const GridSpec& grid,
                                  const SolveOptions& opts) {
  require_discount_condition(econ);
  grid.validate();
  if (!(opts.tol > 0.0) || opts.max_iterations < 1) {
    throw std::invalid_argument("solve_value_iteration: bad options");
  }

  SolveResult res;
  ValueField v(grid, 0.0);
  PolicyField pol(grid);
  BackupStats stats;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    auto [next, next_pol] = bellman_backup(v, econ, opts, &stats);
    double sup = 0.0;
    double min_change = 0.0, max_change = 0.0;
    bool any = false;
    for (int i = 0; i < grid.nk(); ++i) {
      for (int j = 0; j < grid.nh(); ++j) {
        const double a = v.at(i, j), b = next.at(i, j);
        if (!is_finite(a) || !is_finite(b)) continue;
        const double d = b - a;
        sup = std::max(sup, std::abs(d));
        if (!any) {
          min_change = max_change = d;
          any = true;
        } else {
          min_change = std::min(min_change, d);
          max_change = std::max(max_change, d);
        }
      }
    }
    v = std::move(next);
    pol = std::move(next_pol);
    res.iterations = it;
    res.final_sup_change = sup;
    if (it == 1) {
      res.first_sweep_min_change = min_change;
      res.first_sweep_max_change = max_change;
    }
    if (sup <= opts.tol) {
      res.converged = true;
      break;
    }
  }

  // residual check: one more application of the operator
  {
    auto [check, check_pol] = bellman_backup(v, econ, opts, nullptr);
    double resid = 0.0;
    for (std::size_t n = 0; n < v.raw().size(); ++n) {
      const double a = v.raw()[n], b = check.raw()[n];
      if (is_finite(a) && is_finite(b)) {
        resid = std::max(resid, std::abs(a - b));
      }
    }
    res.max_bellman_residual = resid;
  }

  res.clip_events = stats.clip_events;
  res.extension_events = stats.extension_events;
  res.dead_nodes = stats.dead_nodes;
  res.value = std::move(v);
  res.policy = std::move(pol);
  if (econ.homogeneous()) {
    res.homogeneity_residual = homogeneity_residual(res.value, econ);
  }
  return res;
}

SolveResult solve_value_iteration(const ModelParams& params,
                                  const GridSpec& grid,
                                  const SolveOptions& opts) {
  return solve_value_iteration(Economy::direct(params), grid, opts);
}

double homogeneity_residual(const ValueField& v, const Economy& econ) {
  if (!econ.homogeneous()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const GridSpec& grid = v.grid();
  const Theta theta = econ.theta();
  const double beta = econ.discount();
  double worst = 0.0;
  for (double lambda : {0.5, 0.8}) {
    const ScaleDecomposition sd = scale_decomposition(lambda, theta);
    const double shift = sd.phi2 / (1.0 - beta);
    for (int i = 1; i + 1 < grid.nk(); ++i) {
      for (int j = 1; j + 1 < grid.nh(); ++j) {
        const double k = grid.k_nodes[i], h = grid.h_nodes[j];
        const double ks = lambda * k, hs = lambda * h;
        if (ks < grid.k_nodes.front() || hs < grid.h_nodes.front()) continue;
        const double base = v.at(i, j);
        if (!is_finite(base)) continue;
        const double scaled = v.eval(ks, hs);
        if (!is_finite(scaled)) continue;
        const double defect =
            std::abs(scaled - (sd.phi1 * base + shift)) / (1.0 + std::abs(base));
        worst = std::max(worst, defect);
      }
    }
  }
  return worst;
}

SolveResult solve_reduced(const Economy& econ,
                          const std::vector<double>& ratio_nodes,
                          const GridSpec& reconstruct_on,
                          const SolveOptions& opts) {
  if (!econ.homogeneous()) {
    throw std::domain_error(
        "solve_reduced: needs a homogeneous economy (gamma = 0 or the "
        "change-of-variables model)");
  }
  require_discount_condition(econ);
  reconstruct_on.validate();
  const ModelParams& p = econ.params();
  const Theta theta = econ.theta();
  const double beta = p.beta;
  const double g_lo = econ.h_growth_lo();
  const double g_hi = econ.h_growth_hi();
  // Effective discount on the shrinking-h branch: beta * g^theta must stay
  // below one over the growth range or the reduced iteration has no modulus.
  {
    const double worst_g = theta.value() < 0.0 ? g_lo : g_hi;
    const double eff =
        beta * (theta.log_case() ? 1.0 : std::pow(worst_g, theta.value()));
    if (!(eff < 1.0)) {
      throw std::domain_error(
          "solve_reduced: beta * g^theta >= 1 on the growth range");
    }
  }

  ReducedSolve red;
  red.w = RatioField(ratio_nodes, 0.0);
  red.x_next.assign(ratio_nodes.size(), 0.0);
  red.g.assign(ratio_nodes.size(), g_lo);
  const int nx = static_cast<int>(ratio_nodes.size());

  // growth-factor lattice: endpoints are the kink (g_lo) and the feasibility
  // ceiling; the stationary factor 1 is pinned as well.
  std::vector<double> gs(opts.inner_points + 1);
  for (int i = 0; i <= opts.inner_points; ++i) {
    gs[i] = g_lo + (g_hi - g_lo) * static_cast<double>(i) / opts.inner_points;
  }
  gs.back() = g_hi;
  if (g_lo < 1.0 && 1.0 < g_hi) insert_sorted_unique(gs, 1.0);

  auto g_weight = [&](double g) {
    return theta.log_case() ? 1.0 : std::pow(g, theta.value());
  };
  auto g_shift = [&](double g) {
    return eval_utility(g, theta) / (1.0 - beta);
  };

  auto backup = [&](const RatioField& w, RatioField* out,
                    std::vector<double>* xp, std::vector<double>* gp) {
    for (int i = 0; i < nx; ++i) {
      const double x = ratio_nodes[i];
      const double xmax = econ.bounds(x, 1.0).k_max;
      const double lin = (1.0 - p.delta_k) * x;
      const double carry = 1.0 + p.n;
      NodeBest best;  // kp slot holds x', hp slot holds g
      auto objective = [&](double xprime, double g, double out_h) {
        const double c = out_h + lin - carry * xprime * g;
        const double f = econ.utility_of(c);
        if (!is_finite(f)) return kNegInf;
        return f + beta * (g_weight(g) * w.eval(xprime) + g_shift(g));
      };
      for (double g : gs) {
        const double u = econ.market_time(1.0, g);
        const double out_h =
            econ.gross_output(x, 1.0) * std::pow(u, 1.0 - p.alpha);
        const double x_top = xmax / g;
        for (int m = 0; m <= opts.inner_points; ++m) {
          const double xprime =
              x_top * static_cast<double>(m) / opts.inner_points;
          consider(best, objective(xprime, g, out_h), xprime, g);
        }
      }
      if (opts.inner_search == InnerSearch::golden_section_nested &&
          is_finite(best.value)) {
        for (int round = 0; round < 2; ++round) {
          {
            const double g = best.hp;
            const double u = econ.market_time(1.0, g);
            const double out_h =
                econ.gross_output(x, 1.0) * std::pow(u, 1.0 - p.alpha);
            const double x_top = xmax / g;
            const double dx = x_top / opts.inner_points;
            double xb, fb;
            golden_max([&](double xx) { return objective(xx, g, out_h); },
                       std::max(0.0, best.kp - dx),
                       std::min(x_top, best.kp + dx), &xb, &fb);
            if (fb > best.value) best = {fb, xb, g};
          }
          {
            const auto it = std::lower_bound(gs.begin(), gs.end(), best.hp);
            const double lo = it == gs.begin() ? gs.front() : *(it - 1);
            const double hi = (it == gs.end() || it + 1 == gs.end())
                                  ? gs.back()
                                  : *(it + 1);
            const double xprime = best.kp;
            double gb, fb;
            golden_max(
                [&](double g) {
                  if (xprime * g > xmax + kFeasibilitySlack) return kNegInf;
                  const double u = econ.market_time(1.0, g);
                  const double out_h =
                      econ.gross_output(x, 1.0) * std::pow(u, 1.0 - p.alpha);
                  return objective(xprime, g, out_h);
                },
                lo, hi, &gb, &fb);
            if (fb > best.value) best = {fb, xprime, gb};
          }
        }
      }
      out->at(i) = best.value;
      (*xp)[i] = best.kp;
      (*gp)[i] = best.hp;
    }
  };

  RatioField next(ratio_nodes, 0.0);
  std::vector<double> xp(ratio_nodes.size()), gp(ratio_nodes.size());
  for (int it = 1; it <= opts.max_iterations; ++it) {
    backup(red.w, &next, &xp, &gp);
    double sup = 0.0;
    for (int i = 0; i < nx; ++i) {
      if (is_finite(red.w.at(i)) && is_finite(next.at(i))) {
        sup = std::max(sup, std::abs(next.at(i) - red.w.at(i)));
      }
    }
    std::swap(red.w, next);
    red.x_next = xp;
    red.g = gp;
    red.iterations = it;
    red.final_sup_change = sup;
    if (sup <= opts.tol) {
      red.converged = true;
      break;
    }
  }

  // Reconstruct the two-dimensional field through the scaling identity
  // V(k,h) = h^theta W(k/h) + U(h)/(1-beta).
  SolveResult res;
  res.value = ValueField(reconstruct_on, 0.0);
  res.policy = PolicyField(reconstruct_on);
  RatioField x_pol(ratio_nodes, 0.0), g_pol(ratio_nodes, 0.0);
  for (int i = 0; i < nx; ++i) {
    x_pol.at(i) = red.x_next[i];
    g_pol.at(i) = red.g[i];
  }
  long clips = 0;
  for (int i = 0; i < reconstruct_on.nk(); ++i) {
    for (int j = 0; j < reconstruct_on.nh(); ++j) {
      const double k = reconstruct_on.k_nodes[i];
      const double h = reconstruct_on.h_nodes[j];
      const double x = k / h;
      const double wv = red.w.eval_counted(x, &clips);
      const double hw =
          theta.log_case() ? 1.0 : std::pow(h, theta.value());
      res.value.at(i, j) =
          hw * wv + eval_utility(h, theta) / (1.0 - beta);
      const double g = g_pol.eval(x);
      const double xprime = x_pol.eval(x);
      const int nidx = res.policy.idx(i, j);
      const double hp = g * h;
      const double kp = xprime * hp;
      res.policy.k_next[nidx] = kp;
      res.policy.h_next[nidx] = hp;
      res.policy.u[nidx] = econ.market_time(h, hp);
      res.policy.v[nidx] = 1.0 - res.policy.u[nidx];
      res.policy.c[nidx] = econ.consumption(k, h, kp, hp);
    }
  }
  res.iterations = red.iterations;
  res.final_sup_change = red.final_sup_change;
  res.converged = red.converged;
  res.clip_events = clips;
  res.homogeneity_residual = homogeneity_residual(res.value, econ);
  res.reduced = std::move(red);
  return res;
}

SolveResult solve_reduced(const ModelParams& params,
                          const std::vector<double>& ratio_nodes,
                          const GridSpec& reconstruct_on,
                          const SolveOptions& opts) {
  if (params.gamma != 0.0) {
    throw std::domain_error(
        "solve_reduced: gamma > 0 requires the transformed economy");
  }
  return solve_reduced(Economy::direct(params), ratio_nodes, reconstruct_on,
                       opts);
}

ValueField finite_horizon_oracle(const Economy& econ, const GridSpec& grid,
                                 int T, int lattice, HullRule hull_rule) {
  require_discount_condition(econ);
  grid.validate();
  if (T < 0 || lattice < 8) {
    throw std::invalid_argument("finite_horizon_oracle: bad T or lattice");
  }
  const ModelParams& p = econ.params();
  const double beta = p.beta;

  ValueField v(grid, 0.0);

  // Flow utilities are sweep-independent; precompute them per node so the
  // T+1 exhaustive sweeps only pay for continuation lookups.
  struct NodeTables {
    std::vector<double> hps;
    std::vector<double> kps;
    std::vector<double> flow;  // hps x kps, -inf where consumption fails
  };

  std::vector<NodeTables> tables;
  tables.reserve(static_cast<std::size_t>(grid.nk()) * grid.nh());
  for (int i = 0; i < grid.nk(); ++i) {
    for (int j = 0; j < grid.nh(); ++j) {
      const double k = grid.k_nodes[i];
      const double h = grid.h_nodes[j];
      const Bounds b = econ.bounds(k, h);
      NodeTables t;
      t.hps = uniform_lattice(b.h_max, lattice);
      const double kink = econ.h_growth_lo() * h;
      if (kink > 0.0 && kink < b.h_max) insert_sorted_unique(t.hps, kink);
      t.kps = uniform_lattice(b.k_max, lattice);
      const double lin0 = (1.0 - p.delta_k) * k;
      const double out0 = econ.gross_output(k, h);
      t.flow.reserve(t.hps.size() * t.kps.size());
      for (double hp : t.hps) {
        const double u = econ.market_time(h, hp);
        const double out_h = out0 * std::pow(u, 1.0 - p.alpha);
        for (double kp : t.kps) {
          t.flow.push_back(econ.utility_of(out_h + lin0 - (1.0 + p.n) * kp));
        }
      }
      tables.push_back(std::move(t));
    }
  }

  ValueField next(grid, kNegInf);
  for (int sweep = 0; sweep <= T; ++sweep) {
    Continuation cont(v, econ, hull_rule);
    std::size_t node = 0;
    for (int i = 0; i < grid.nk(); ++i) {
      for (int j = 0; j < grid.nh(); ++j, ++node) {
        const NodeTables& t = tables[node];
        double best = kNegInf;
        std::size_t idx = 0;
        for (double hp : t.hps) {
          for (double kp : t.kps) {
            const double f = t.flow[idx++];
            if (!is_finite(f)) continue;
            const double val = f + beta * cont.eval(kp, hp);
            if (val > best) best = val;
          }
        }
        next.at(i, j) = best;
      }
    }
    std::swap(v, next);
  }
  return v;
}

ValueField finite_horizon_oracle(const ModelParams& params,
                                 const GridSpec& grid, int T, int lattice,
                                 HullRule hull_rule) {
  return finite_horizon_oracle(Economy::direct(params), grid, T, lattice,
                               hull_rule);
}

}  // namespace growth
