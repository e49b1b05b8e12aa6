#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "growth/paths.hpp"
#include "growth/solver.hpp"

using namespace growth;

namespace {

GridSpec centered_grid(int n) {
  return GridSpec::log_grid(0.25, 4.0, n, 0.25, 4.0, n);
}

}  // namespace

TEST_CASE("forced market time reproduces the three human-capital regimes") {
  const ModelParams p;
  const double ub = max_market_time(p);

  const Path stat = simulate_forced({1.0, 1.0}, 100, ub, p);
  for (const State& s : stat.states) CHECK(s.h == 1.0);

  const Path grow = simulate_forced({1.0, 1.0}, 100, 0.0, p);  // v = 1
  for (std::size_t t = 0; t < grow.states.size(); ++t) {
    const double expect = std::pow(1.05, static_cast<double>(t));
    CHECK(std::abs(grow.states[t].h - expect) <= 1e-12 * expect);
  }

  const Path shrink = simulate_forced({1.0, 1.0}, 100, 1.0, p);  // v = 0
  for (std::size_t t = 0; t < shrink.states.size(); ++t) {
    const double expect = std::pow(0.95, static_cast<double>(t));
    CHECK(std::abs(shrink.states[t].h - expect) <= 1e-12 * expect);
  }
}

TEST_CASE("forced paths stay feasible with positive consumption") {
  const ModelParams p;
  for (double u : {0.0, 0.3, max_market_time(p), 1.0}) {
    const Path path = simulate_forced({1.0, 1.0}, 60, u, p);
    for (std::size_t t = 0; t + 1 < path.states.size(); ++t) {
      CHECK(in_gamma(path.states[t], path.states[t + 1], p));
      CHECK(path.controls[t].c > 0.0);
      CHECK(path.controls[t].u + path.controls[t].v == doctest::Approx(1.0));
      CHECK(std::abs(path.controls[t].c -
                     consumption(path.states[t], path.states[t + 1], p)) <=
            1e-12 * (1.0 + path.controls[t].c));
    }
  }
}

TEST_CASE("study time against the threshold drives the growth direction") {
  const ModelParams p;
  const double ub = max_market_time(p);
  const Path up = simulate_forced({1.0, 1.0}, 40, ub - 0.1, p);  // v > v_bar
  const Path down = simulate_forced({1.0, 1.0}, 40, ub + 0.1, p);
  for (std::size_t t = 1; t < up.states.size(); ++t) {
    CHECK(up.states[t].h > up.states[t - 1].h);
    CHECK(down.states[t].h < down.states[t - 1].h);
  }
}

TEST_CASE("growth diagnostics classify the forced regimes") {
  const ModelParams p;
  const double ub = max_market_time(p);
  const GrowthReport grow = growth_diagnostics(simulate_forced({1, 1}, 100, 0.0, p));
  CHECK(grow.classification == GrowthLabel::sustained_growth);
  CHECK(grow.g_h == doctest::Approx(1.05).epsilon(1e-12));
  const GrowthReport stat = growth_diagnostics(simulate_forced({1, 1}, 100, ub, p));
  CHECK(stat.classification == GrowthLabel::stationary);
  const GrowthReport shrink = growth_diagnostics(simulate_forced({1, 1}, 100, 1.0, p));
  CHECK(shrink.classification == GrowthLabel::degrowth);
  CHECK(shrink.g_h == doctest::Approx(0.95).epsilon(1e-12));
  CHECK_THROWS_AS(growth_diagnostics(Path{}), std::invalid_argument);
}

TEST_CASE("mixed rates are labelled as such") {
  Path path;
  for (int t = 0; t <= 12; ++t) {
    path.states.push_back({1.0, t % 2 == 0 ? 1.0 : 1.2});
  }
  const GrowthReport r = growth_diagnostics(path);
  CHECK(r.label_h == GrowthLabel::mixed);
}

TEST_CASE("constant path value, one-phase region") {
  const ModelParams p;
  const ConstantPathResult r = constant_path_value({1.0, 1.0}, p);
  CHECK_FALSE(r.two_phase);
  CHECK(r.threshold == doctest::Approx(10.337734332563373).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(-3.510211054800984).epsilon(1e-10));
  // the path realizes the value: constant consumption c0 at u_bar
  CHECK(r.path.controls.front().c ==
        doctest::Approx(0.49557220667245816).epsilon(1e-12));
  CHECK(r.path.controls.front().u == doctest::Approx(0.5));
  for (const State& s : r.path.states) {
    CHECK(s.k == 1.0);
    CHECK(s.h == 1.0);
  }
  ModelParams lin = p;
  lin.theta = Theta(1.0);
  CHECK(constant_path_value({1.0, 1.0}, lin).value ==
        doctest::Approx(-2.522138966637709).epsilon(1e-10));
  CHECK_THROWS_AS(constant_path_value({0.0, 1.0}, p), std::invalid_argument);
}

TEST_CASE("constant path value, two-phase region") {
  const ModelParams p;
  const ConstantPathResult r = constant_path_value({20.0, 1.0}, p);
  CHECK(r.two_phase);
  CHECK(is_finite(r.value));
  CHECK(r.value == doctest::Approx(-1.137578464968184).epsilon(1e-10));
  CHECK(r.path.states[0].k == 20.0);
  CHECK(r.path.states[1].k ==
        doctest::Approx(5.168867166281687).epsilon(1e-10));
  CHECK(r.path.states[2].k == r.path.states[1].k);
  for (const Path::Control& c : r.path.controls) CHECK(c.c > 0.0);
}

TEST_CASE("discounted sums and the tail bound") {
  const ModelParams p;
  const ConstantPathResult one = constant_path_value({1.0, 1.0}, p, 1);
  const DiscountedSum head = discounted_sum(one.path, p);
  CHECK(head.partial == doctest::Approx(-0.7020422109601967).epsilon(1e-12));

  const ConstantPathResult r200 = constant_path_value({1.0, 1.0}, p, 200);
  const DiscountedSum d200 = discounted_sum(r200.path, p);
  CHECK(d200.upper_tail_bound ==
        doctest::Approx(4.532066592361057e-4).epsilon(1e-9));

  const ConstantPathResult r300 = constant_path_value({1.0, 1.0}, p, 300);
  const DiscountedSum d300 = discounted_sum(r300.path, p);
  CHECK(std::abs(d300.partial - (-3.510211054800984)) <= 1e-10);

  // exact truncation error of a geometric series
  const double u0 = -0.7020422109601967;
  for (int T : {5, 25, 80}) {
    const ConstantPathResult r = constant_path_value({1.0, 1.0}, p, T);
    const double partial = discounted_sum(r.path, p).partial;
    const double err = std::abs(partial - u0 / 0.2);
    const double expect = std::abs(u0) * std::pow(0.8, T) / 0.2;
    CHECK(err == doctest::Approx(expect).epsilon(1e-9));
  }

  Path bad;
  bad.states = {{1, 1}, {1, 1}};
  bad.controls = {{0.0, 0.5, 0.5}};
  bad.utilities = {kNegInf};
  CHECK_THROWS_AS(discounted_sum(bad, p), std::domain_error);
}

TEST_CASE("shifted lower bound") {
  const ModelParams p;
  const ConstantPathResult r = constant_path_value({1.0, 1.0}, p, 128);
  const double bound = shifted_lower_bound(r.path, p, 0.5);
  CHECK(bound == doctest::Approx(-4.205173062955564).epsilon(1e-10));
  CHECK(bound <= r.value);
  // parametric continuity: the bound approaches the value as epsilon -> 0
  CHECK(shifted_lower_bound(r.path, p, 1e-9) ==
        doctest::Approx(r.value).epsilon(1e-6));
  // ordering against the matching truncated sum
  const double partial = discounted_sum(r.path, p).partial;
  CHECK(shifted_lower_bound(r.path, p, 0.25) <= partial + 1e-12);

  // a unit-consumption path has zero bound for every epsilon
  Path unit;
  unit.states = {{1, 1}, {1, 1}, {1, 1}};
  unit.controls = {{1.0, 0.5, 0.5}, {1.0, 0.5, 0.5}};
  unit.utilities = {0.0, 0.0};
  for (double eps : {0.1, 0.5, 2.0}) {
    CHECK(shifted_lower_bound(unit, p, eps) ==
          doctest::Approx(0.0).epsilon(1e-14));
  }

  ModelParams pos = p;
  pos.theta = Theta(0.5);
  CHECK_THROWS_AS(shifted_lower_bound(r.path, pos, 0.5), std::domain_error);
  CHECK_THROWS_AS(shifted_lower_bound(r.path, p, 0.0), std::invalid_argument);
}

TEST_CASE("lower-bound chain up to the solved value") {
  const ModelParams p;
  const SolveResult res = solve_value_iteration(p, centered_grid(13), SolveOptions{});
  const ConstantPathResult cp = constant_path_value({1.0, 1.0}, p, 64);
  const double shifted = shifted_lower_bound(cp.path, p, 0.5);
  const double v11 = res.value.eval(1.0, 1.0);
  CHECK(shifted <= cp.value);
  CHECK(cp.value <= v11 + 5e-3 * (1.0 + std::abs(v11)));
}

TEST_CASE("transversality along the stationary plan") {
  const ModelParams p;
  const SolveResult res = solve_value_iteration(p, centered_grid(13), SolveOptions{});
  const ConstantPathResult cp = constant_path_value({1.0, 1.0}, p, 80);
  const TransversalityReport tr =
      transversality_diagnostic(cp.path, res.value, p);
  CHECK(tr.applicable);
  CHECK(tr.finite_value_path);
  CHECK(tr.s1_pass);
  CHECK(tr.s2_pass);
  CHECK(std::abs(tr.discounted_values[60]) < 1e-4);
  // geometric decay of a constant
  for (std::size_t t = 1; t < tr.discounted_values.size(); ++t) {
    CHECK(std::abs(tr.discounted_values[t]) <=
          0.8 * std::abs(tr.discounted_values[t - 1]) + 1e-15);
  }
}

TEST_CASE("transversality under maximal growth with bounded-below utility") {
  ModelParams p;
  p.theta = Theta(0.5);
  const SolveResult res = solve_value_iteration(p, centered_grid(13), SolveOptions{});
  const Path grow = simulate_forced({1.0, 1.0}, 120, 0.0, p);
  const TransversalityReport tr = transversality_diagnostic(grow, res.value, p);
  CHECK(tr.applicable);
  CHECK(tr.s1_pass);
  CHECK(tr.s2_pass);
  // decay dominated by (beta*zeta)^t up to a fixed constant
  const double bz = 16.0 / 17.0;
  const double c0 = std::abs(tr.discounted_values[0]) + 1.0;
  for (std::size_t t = 0; t < tr.discounted_values.size(); ++t) {
    CHECK(std::abs(tr.discounted_values[t]) <=
          10.0 * c0 * std::pow(bz, static_cast<double>(t)));
  }
}

TEST_CASE("policy simulation follows the solved rule") {
  const ModelParams p;
  const SolveResult res = solve_value_iteration(p, centered_grid(13), SolveOptions{});
  const Path path = simulate(res.policy, {1.0, 1.0}, 30, p);
  CHECK(path.states.size() == 31);
  for (std::size_t t = 0; t + 1 < path.states.size(); ++t) {
    CHECK(in_gamma(path.states[t], path.states[t + 1], p));
    CHECK(path.controls[t].u + path.controls[t].v == doctest::Approx(1.0));
  }
  // the baseline optimum walks human capital down
  CHECK(path.states.back().h < 1.0);
  // long horizons leave the hull and are flagged, not fatal
  const Path long_path = simulate(res.policy, {1.0, 1.0}, 120, p);
  CHECK(long_path.hull_exits > 0);
}
