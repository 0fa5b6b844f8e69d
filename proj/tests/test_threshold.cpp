#include <doctest.h>

#include <cmath>

#include "aklt/threshold.hpp"

using namespace aklt;

namespace {

// Finite-size curve 1 / (1 + exp((p - pc) L / w)) sampled with many trials.
PercolationResult curve(int L, double pc, const std::vector<double>& grid, double w = 0.5) {
  PercolationResult r;
  r.kind = "synthetic";
  r.L = L;
  r.p_grid = grid;
  r.trials = 100000;
  for (double p : grid)
    r.spanning.push_back(std::llround(r.trials / (1.0 + std::exp((p - pc) * L / w))));
  return r;
}

PercolationResult flat(int L, const std::vector<double>& grid, double value) {
  PercolationResult r = curve(L, 0.0, grid);
  for (auto& s : r.spanning) s = std::llround(value * r.trials);
  return r;
}

}  // namespace

TEST_CASE("synthetic curves cross at the built-in threshold") {
  const auto grid = make_grid(0.0, 0.4, 0.02);
  const std::vector<PercolationResult> rs{curve(10, 0.17, grid), curve(20, 0.17, grid), curve(40, 0.17, grid)};
  const auto est = estimate_threshold(rs);
  REQUIRE(est.found());
  CHECK(est.p_c == doctest::Approx(0.17).epsilon(0.01));
  CHECK(est.crossings.size() == 3);
  CHECK(est.uncertainty > 0.0);
  CHECK(est.uncertainty < 0.01);
  CHECK(est.sizes == std::vector<int>{10, 20, 40});
}

TEST_CASE("single crossing point interpolates linearly") {
  const std::vector<double> grid{0.0, 0.1, 0.2};
  PercolationResult a = flat(10, grid, 0.5), b = flat(20, grid, 0.5);
  a.spanning = {80000, 60000, 40000};
  b.spanning = {90000, 50000, 10000};
  const auto p = crossing_point(a, b);
  REQUIRE(p.has_value());
  CHECK(*p == doctest::Approx(0.05));
}

TEST_CASE("identical curves give no crossing") {
  const auto grid = make_grid(0.0, 0.2, 0.05);
  const std::vector<PercolationResult> rs{flat(10, grid, 0.4), flat(20, grid, 0.4)};
  const auto est = estimate_threshold(rs);
  CHECK(est.status == ThresholdStatus::no_crossing);
  CHECK_FALSE(est.found());
}

TEST_CASE("larger size always below: no crossing") {
  const auto grid = make_grid(0.0, 0.2, 0.05);
  const std::vector<PercolationResult> rs{flat(10, grid, 0.6), flat(20, grid, 0.3)};
  CHECK(estimate_threshold(rs).status == ThresholdStatus::no_crossing);
}

TEST_CASE("threshold below the first grid step") {
  const std::vector<double> grid{0.0, 0.05, 0.1};
  PercolationResult a = flat(10, grid, 0.0), b = flat(20, grid, 0.0);
  a.spanning = {100000, 60000, 20000};
  b.spanning = {100000, 30000, 1000};
  const std::vector<PercolationResult> rs{a, b};
  const auto est = estimate_threshold(rs);
  CHECK(est.status == ThresholdStatus::below_resolution);
  CHECK(est.p_c == 0.05);
}

TEST_CASE("input order does not matter") {
  const auto grid = make_grid(0.0, 0.4, 0.02);
  const std::vector<PercolationResult> a{curve(10, 0.2, grid), curve(30, 0.2, grid)};
  const std::vector<PercolationResult> b{curve(30, 0.2, grid), curve(10, 0.2, grid)};
  CHECK(estimate_threshold(a).p_c == estimate_threshold(b).p_c);
}

TEST_CASE("invalid inputs are rejected") {
  const auto grid = make_grid(0.0, 0.4, 0.02);
  const std::vector<PercolationResult> one{curve(10, 0.2, grid)};
  CHECK_THROWS_AS(estimate_threshold(one), std::invalid_argument);
  const std::vector<PercolationResult> dup{curve(10, 0.2, grid), curve(10, 0.2, grid)};
  CHECK_THROWS_AS(estimate_threshold(dup), std::invalid_argument);
  const std::vector<PercolationResult> grids{curve(10, 0.2, grid), curve(20, 0.2, make_grid(0.0, 0.4, 0.04))};
  CHECK_THROWS_AS(estimate_threshold(grids), std::invalid_argument);
  auto best = curve(20, 0.2, grid);
  best.scenario = Scenario::best;
  const std::vector<PercolationResult> mixed{curve(10, 0.2, grid), best};
  CHECK_THROWS_AS(estimate_threshold(mixed), std::invalid_argument);
}

TEST_CASE("bootstrap is reproducible") {
  const auto grid = make_grid(0.0, 0.4, 0.02);
  std::vector<PercolationResult> rs{curve(10, 0.2, grid), curve(20, 0.2, grid)};
  for (auto& r : rs) {
    r.trials = 200;
    for (auto& s : r.spanning) s = s * 200 / 100000;
  }
  const auto a = estimate_threshold(rs), b = estimate_threshold(rs);
  CHECK(a.bootstrap_sd == b.bootstrap_sd);
  CHECK(a.bootstrap_used > 0);
}
