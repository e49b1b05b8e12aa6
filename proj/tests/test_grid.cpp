#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "growth/grid.hpp"

using namespace growth;

TEST_CASE("log spacing") {
  const auto nodes = GridSpec::log_spaced(0.25, 4.0, 9);
  CHECK(nodes.size() == 9);
  CHECK(nodes.front() == 0.25);
  CHECK(nodes.back() == 4.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    CHECK(nodes[i] > nodes[i - 1]);
    // constant ratio in log space
    CHECK(nodes[i] / nodes[i - 1] ==
          doctest::Approx(std::pow(16.0, 1.0 / 8.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(GridSpec::log_spaced(0.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::log_spaced(1.0, 0.5, 4), std::invalid_argument);
}

TEST_CASE("grid validation") {
  GridSpec g = GridSpec::log_grid(0.25, 4.0, 4, 0.25, 4.0, 4);
  CHECK_NOTHROW(g.validate());
  g.k_nodes = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GridSpec::log_grid(0.25, 4.0, 4, 0.25, 4.0, 4);
  g.h_nodes[2] = g.h_nodes[1];
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("bilinear interpolation in log coordinates") {
  const GridSpec g = GridSpec::log_grid(0.25, 4.0, 9, 0.25, 4.0, 9);
  ValueField v(g, 0.0);
  // a function linear in (log k, log h) is reproduced exactly
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      v.at(i, j) = 2.0 * std::log(g.k_nodes[i]) - 0.7 * std::log(g.h_nodes[j]) + 1.0;
    }
  }
  CHECK(v.eval(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.eval(0.9, 2.3) ==
        doctest::Approx(2.0 * std::log(0.9) - 0.7 * std::log(2.3) + 1.0)
            .epsilon(1e-12));
  // exact at the nodes
  CHECK(v.eval(g.k_nodes[3], g.h_nodes[5]) == doctest::Approx(v.at(3, 5)));
}

TEST_CASE("interpolation clamps at the hull and counts it") {
  const GridSpec g = GridSpec::log_grid(0.5, 2.0, 5, 0.5, 2.0, 5);
  ValueField v(g, 3.0);
  long clips = 0;
  CHECK(v.eval_counted(0.1, 1.0, &clips) == doctest::Approx(3.0));
  CHECK(v.eval_counted(1.0, 5.0, &clips) == doctest::Approx(3.0));
  CHECK(v.eval_counted(1.0, 1.0, &clips) == doctest::Approx(3.0));
  CHECK(clips == 2);
}

TEST_CASE("split-cell rule for -inf corners") {
  const GridSpec g = GridSpec::log_grid(1.0, 8.0, 4, 1.0, 8.0, 4);
  ValueField v(g, 1.0);
  v.at(0, 0) = kNegInf;
  // deep inside the quadrant nearest the -inf corner
  CHECK(v.eval(1.05, 1.05) == kNegInf);
  // the far quadrant of the same cell stays finite
  CHECK(is_finite(v.eval(1.9, 1.9)));
  CHECK(v.eval(1.9, 1.9) == doctest::Approx(1.0));
  // cells without -inf corners are untouched
  CHECK(v.eval(4.0, 4.0) == doctest::Approx(1.0));
}

TEST_CASE("policy interpolation") {
  const GridSpec g = GridSpec::log_grid(0.5, 2.0, 5, 0.5, 2.0, 5);
  PolicyField p(g);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      p.k_next[p.idx(i, j)] = 0.5 * g.k_nodes[i];
      p.h_next[p.idx(i, j)] = 0.95 * g.h_nodes[j];
    }
  }
  bool left = false;
  const auto [kp, hp] = p.eval(g.k_nodes[2], g.h_nodes[2], &left);
  CHECK_FALSE(left);
  CHECK(kp == doctest::Approx(0.5 * g.k_nodes[2]));
  CHECK(hp == doctest::Approx(0.95 * g.h_nodes[2]));
  p.eval(0.01, 1.0, &left);
  CHECK(left);
}

TEST_CASE("ratio field") {
  RatioField w(GridSpec::log_spaced(0.125, 8.0, 9), 0.0);
  for (int i = 0; i < w.size(); ++i) w.at(i) = std::log(w.nodes()[i]);
  CHECK(w.eval(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w.eval(2.3) == doctest::Approx(std::log(2.3)).epsilon(1e-12));
  long clips = 0;
  CHECK(w.eval_counted(0.01, &clips) == doctest::Approx(std::log(0.125)));
  CHECK(clips == 1);
  CHECK_THROWS_AS(RatioField({1.0, 2.0}, 0.0), std::invalid_argument);
}
