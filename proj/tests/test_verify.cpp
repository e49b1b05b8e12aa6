#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "growth/verify.hpp"

using namespace growth;

TEST_CASE("power mean examples") {
  const WeightedSample s{{2.0, 8.0}, {0.5, 0.5}};
  CHECK(power_mean(s, 0.0) == doctest::Approx(4.0));
  CHECK(power_mean(s, 1.0) == doctest::Approx(5.0));
  CHECK(power_mean(s, -1.0) == doctest::Approx(3.2));
  const WeightedSample c{{7.0, 7.0, 7.0}, {0.2, 0.5, 1.3}};
  for (double p : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CHECK(power_mean(c, p) == doctest::Approx(7.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(power_mean({{}, {}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(power_mean({{1.0}, {1.0, 2.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(power_mean({{1.0, -2.0}, {1.0, 1.0}}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("power mean monotone in the exponent") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const int n = 2 + static_cast<int>(u(rng) * 6);
    WeightedSample s;
    for (int j = 0; j < n; ++j) {
      s.values.push_back(std::exp(-4.0 + 8.0 * u(rng)));
      s.weights.push_back(0.05 + u(rng));
    }
    double p = -4.0 + 8.0 * u(rng), q = -4.0 + 8.0 * u(rng);
    if (p > q) std::swap(p, q);
    const double mp = power_mean(s, p), mq = power_mean(s, q);
    CHECK(mp <= mq * (1.0 + 1e-11));
    CHECK(power_mean(s, 0.0) <= power_mean(s, 1.0) * (1.0 + 1e-11));  // GM-AM
  }
}

TEST_CASE("strict inequality off the diagonal, equality on it") {
  const WeightedSample spread{{1.0, 3.0}, {1.0, 1.0}};
  CHECK(power_mean(spread, 0.0) < power_mean(spread, 1.0));
  CHECK(power_mean(spread, -2.0) < power_mean(spread, 2.0));
  const double c = 0.37;
  const WeightedSample equal{{c, c, c, c}, {0.1, 0.2, 0.3, 0.4}};
  CHECK(std::abs(power_mean(equal, -1.5) - power_mean(equal, 1.5)) <=
        1e-12 * c);
}

TEST_CASE("GM-AM step used by the growth bound") {
  // A k^a h^(1-a) <= A(a k + (1-a) h)
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double A = 0.5 + 2.0 * u(rng);
    const double a = 0.05 + 0.9 * u(rng);
    const double k = std::exp(-5.0 + 10.0 * u(rng));
    const double h = std::exp(-5.0 + 10.0 * u(rng));
    const double gm = A * std::pow(k, a) * std::pow(h, 1.0 - a);
    const double am = A * (a * k + (1.0 - a) * h);
    CHECK(gm <= am * (1.0 + 1e-12));
  }
}

TEST_CASE("baseline constants") {
  const AssumptionReport r = compute_constants(ModelParams{});
  CHECK(r.xi == doctest::Approx(20.0 / 17.0).epsilon(1e-12));
  CHECK(r.zeta == doctest::Approx(20.0 / 17.0).epsilon(1e-12));
  CHECK(r.beta_zeta == doctest::Approx(16.0 / 17.0).epsilon(1e-12));
  CHECK(r.eta == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(r.D_h == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(r.v_bar == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.u_bar == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.rho == doctest::Approx(1.0));
  CHECK(r.omega == doctest::Approx(0.3));
  CHECK(r.verdicts.at("betacond").verdict == Verdict::pass);
  CHECK(r.verdicts.at("H1").verdict == Verdict::pass);
  CHECK(r.verdicts.at("H2").verdict == Verdict::pass);
  CHECK(r.continuity_mode == ContinuityMode::scaling_a6);
}

TEST_CASE("externality constants") {
  ModelParams p;
  p.gamma = 0.35;
  const AssumptionReport r = compute_constants(p);
  CHECK(r.omega == doctest::Approx(0.3 / 1.35).epsilon(1e-12));
  CHECK(r.xi_hat == doctest::Approx(1.1002178649237473).epsilon(1e-12));
  CHECK(r.zeta == doctest::Approx(1.1002178649237473).epsilon(1e-12));
  CHECK(r.rho == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.zeta_rho ==
        doctest::Approx(20.0 / 17.0).epsilon(1e-12));  // xi > D_h^1.5
  // the discount condition weakly relaxes when the capital branch binds
  const AssumptionReport base = compute_constants(ModelParams{});
  CHECK(1.0 / r.zeta >= 1.0 / base.zeta - 1e-15);
}

TEST_CASE("knife-edge constants") {
  ModelParams p;
  p.A = 1.0;
  p.alpha = 0.5;
  p.delta_k = 0.5;
  p.n = 0.0;
  const AssumptionReport r = compute_constants(p);
  CHECK(r.xi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discount condition verdicts") {
  ModelParams p;
  p.beta = 0.8;
  CHECK(compute_constants(p).verdicts.at("betacond").verdict == Verdict::pass);
  p.beta = 0.9;
  const AssumptionReport r = compute_constants(p);
  CHECK(r.verdicts.at("betacond").verdict == Verdict::fail);
  CHECK(r.beta_zeta == doctest::Approx(0.9 * 20.0 / 17.0).epsilon(1e-12));
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("growth constant exceeds one under H2") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ModelParams p;
    p.A = 0.2 + 3.0 * u(rng);
    p.alpha = 0.1 + 0.8 * u(rng);
    p.delta_h = 0.01 + 0.5 * u(rng);
    p.B = p.delta_h + 0.01 + u(rng);  // keeps H2
    const AssumptionReport r = compute_constants(p);
    CHECK(r.D_h > 1.0);
    CHECK(r.zeta >= r.D_h);
    CHECK(r.zeta > 1.0);
  }
}

TEST_CASE("H2 failure reported, not thrown") {
  ModelParams p;
  p.B = 0.04;  // phi(1) = 1 < delta_h / B = 1.25
  const AssumptionReport r = check_all(p, 100, 7);
  CHECK(r.verdicts.at("H2").verdict == Verdict::fail);
  CHECK(r.verdicts.at("A2").verdict == Verdict::not_applicable);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("sampled assumption checks pass across gamma") {
  for (double gamma : {0.0, 0.35, 1.0}) {
    ModelParams p;
    p.gamma = gamma;
    const AssumptionReport r = check_all(p, 20000, 123);
    CHECK(r.verdicts.at("A2").verdict == Verdict::pass);
    CHECK(r.verdicts.at("A3").verdict == Verdict::pass);
    CHECK(r.verdicts.at("A6-cone").verdict == Verdict::pass);
    CHECK(r.all_pass());
  }
}

TEST_CASE("large externality switches the continuity argument") {
  ModelParams p;
  p.gamma = 1.2;
  const AssumptionReport r = check_all(p, 1000, 5);
  CHECK(r.continuity_mode == ContinuityMode::lower_bound_a7);
  CHECK(r.verdicts.at("A6-cone").verdict == Verdict::not_applicable);
}

TEST_CASE("check_all is deterministic given the seed") {
  ModelParams p;
  p.gamma = 0.35;
  const AssumptionReport a = check_all(p, 5000, 99);
  const AssumptionReport b = check_all(p, 5000, 99);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("report serialization carries verdicts") {
  const AssumptionReport r = check_all(ModelParams{}, 500, 1);
  const std::string text = r.to_text();
  CHECK(text.find("betacond") != std::string::npos);
  CHECK(text.find("all checks pass") != std::string::npos);
  const std::string json = r.to_json();
  CHECK(json.find("\"beta_zeta\"") != std::string::npos);
  CHECK(json.find("\"all_pass\": true") != std::string::npos);
}
