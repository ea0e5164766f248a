#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "facloc/oracles.hpp"
#include "facloc/rng.hpp"

using facloc::CostFunction;
using facloc::GridSpec;
using facloc::Instance;
using facloc::Mechanism;
using facloc::Objective;
using facloc::SplitMix64;

namespace {

Instance make(std::vector<double> xs, int k, CostFunction c) {
  Instance inst;
  inst.locations = std::move(xs);
  inst.k = k;
  inst.cost = std::move(c);
  return inst;
}

// Reference social optimum: contiguous blocks with a dense facility grid
// per block (agent locations included, so the comparison is exact when the
// block optimum sits at an agent).
double grid_social_cost(const Instance& inst, int grid_points) {
  std::vector<double> xs = inst.locations;
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  const auto blocks =
      static_cast<std::size_t>(std::min<long long>(inst.k, n));
  if (blocks == n) return 0.0;

  const auto block_cost = [&](std::size_t i, std::size_t j) {
    double best = std::numeric_limits<double>::infinity();
    const auto try_at = [&](double p) {
      double total = 0.0;
      for (std::size_t t = i; t <= j; ++t)
        total += inst.cost.eval(std::abs(xs[t] - p));
      best = std::min(best, total);
    };
    for (std::size_t t = i; t <= j; ++t) try_at(xs[t]);
    const double lo = xs[i], hi = xs[j];
    for (int g = 0; g <= grid_points; ++g)
      try_at(lo + (hi - lo) * g / grid_points);
    return best;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dp(blocks + 1,
                                      std::vector<double>(n + 1, inf));
  dp[0][0] = 0.0;
  for (std::size_t m = 1; m <= blocks; ++m)
    for (std::size_t j = m; j <= n; ++j)
      for (std::size_t i = m - 1; i < j; ++i)
        if (dp[m - 1][i] < inf)
          dp[m][j] = std::min(dp[m][j], dp[m - 1][i] + block_cost(i, j - 1));
  return dp[blocks][n];
}

}  // namespace

TEST_CASE("opt_max_cost") {
  CHECK(facloc::opt_max_cost(make({0.0, 1.0, 2.0}, 2,
                                  CostFunction::linear(1.0))) == 0.5);
  CHECK(facloc::opt_max_cost(make({0.0, 10.0}, 2, CostFunction::linear(1.0))) ==
        0.0);
  CHECK(facloc::opt_max_cost(make({0.0, 10.0}, 1,
                                  CostFunction::exponential(1.0))) ==
        doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-15));
  CHECK_THROWS_AS(
      facloc::opt_max_cost(make({0.0, 1.0}, 1, CostFunction::radius(1.0))),
      std::invalid_argument);
}

TEST_CASE("opt_social_cost") {
  CHECK(facloc::opt_social_cost(make({0.0, 1.0, 3.0}, 2,
                                     CostFunction::linear(1.0))) == 1.0);
  CHECK(facloc::opt_social_cost(make({0.0, 10.0}, 2,
                                     CostFunction::linear(1.0))) == 0.0);
}

TEST_CASE("opt_social_cost matches the dense grid search") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    facloc::GenOptions options;
    options.min_agents = 1;
    options.max_agents = 5;
    options.max_k = 4;
    const auto inst = facloc::random_instance(rng, options);
    const double dp = facloc::opt_social_cost(inst);
    const double grid = grid_social_cost(inst, 10000);
    CHECK(std::abs(dp - grid) <= 1e-6);
  }
}

TEST_CASE("check_equal_cost on closed forms") {
  CHECK(facloc::check_equal_cost(CostFunction::linear(1.5), 3.0, 100, 1) <
        1e-12);
  CHECK(facloc::check_equal_cost(CostFunction::exponential(1.0), 2.0, 100, 2) <
        1e-9);
  CHECK(facloc::check_equal_cost(CostFunction::piecewise_linear({2.0, 1.0}, 1.0),
                                 5.5, 100, 3) < 1e-9);
}

TEST_CASE("deviation_search clears the honest mechanisms") {
  SplitMix64 rng(11);
  GridSpec grid;
  grid.points = 60;

  facloc::GenOptions ec_options;
  ec_options.max_agents = 6;
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = facloc::random_instance(rng, ec_options);
    CHECK(facloc::deviation_search(Mechanism::equal_cost, inst, grid).gain <=
          1e-9);
  }

  facloc::GenOptions ptl_options;
  ptl_options.ptl = true;
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = facloc::random_instance(rng, ptl_options);
    CHECK(facloc::deviation_search(Mechanism::pick_the_loser, inst, grid)
              .gain <= 1e-9);
  }
}

TEST_CASE("deviation_search flags the planted mean mechanism") {
  const auto inst = make({0.0, 2.0, 10.0}, 1, CostFunction::linear(1.0));
  GridSpec grid;
  const auto finding =
      facloc::deviation_search(Mechanism::planted_mean, inst, grid);
  CHECK(finding.gain > 0.1);
  REQUIRE(finding.agents.size() == 1);
  CHECK(finding.deviated_costs[0] < finding.truthful_costs[0]);
}

TEST_CASE("coalition_search flags the planted mean mechanism for pairs") {
  const auto inst = make({0.0, 2.0, 10.0}, 1, CostFunction::linear(1.0));
  GridSpec grid;
  grid.points = 40;
  const auto finding =
      facloc::coalition_search(Mechanism::planted_mean, inst, 2, grid);
  CHECK(finding.gain > 0.1);  // both colluders strictly gain
}

TEST_CASE("coalition_search clears the honest mechanisms on n = 4") {
  SplitMix64 rng(12);
  GridSpec grid;
  grid.points = 25;

  facloc::GenOptions ec_options;
  ec_options.min_agents = 4;
  ec_options.max_agents = 4;
  ec_options.max_k = 2;
  for (int trial = 0; trial < 3; ++trial) {
    const auto inst = facloc::random_instance(rng, ec_options);
    CHECK(facloc::coalition_search(Mechanism::equal_cost, inst, 2, grid).gain <=
          1e-9);
  }

  facloc::GenOptions ptl_options;
  ptl_options.ptl = true;
  ptl_options.min_agents = 4;
  ptl_options.max_agents = 4;
  for (int trial = 0; trial < 3; ++trial) {
    const auto inst = facloc::random_instance(rng, ptl_options);
    CHECK(facloc::coalition_search(Mechanism::pick_the_loser, inst, 2, grid)
              .gain <= 1e-9);
  }
}

TEST_CASE("coalition_search rejects coalitions above size 2") {
  const auto inst = make({0.0, 1.0, 2.0}, 1, CostFunction::linear(1.0));
  CHECK_THROWS_AS(
      facloc::coalition_search(Mechanism::equal_cost, inst, 3, GridSpec{}),
      std::invalid_argument);
}

TEST_CASE("ratio_report conventions and bounds") {
  SUBCASE("degenerate n <= k instance reports ratio 1") {
    const auto inst = make({0.0, 10.0}, 2, CostFunction::linear(1.0));
    const auto report =
        facloc::ratio_report(Mechanism::equal_cost, inst, Objective::max);
    CHECK(report.mechanism_value == 0.0);
    CHECK(report.optimum == 0.0);
    CHECK(report.ratio == 1.0);
  }
  SUBCASE("equal cost stays within the proven factors") {
    SplitMix64 rng(13);
    facloc::GenOptions options;
    std::vector<Instance> instances;
    for (int trial = 0; trial < 40; ++trial)
      instances.push_back(facloc::random_instance(rng, options));
    for (const auto& report : facloc::ratio_report(
             Mechanism::equal_cost, instances, Objective::max))
      CHECK(report.ratio <= 2.0 + 1e-9);
    for (const auto& report : facloc::ratio_report(
             Mechanism::equal_cost, instances, Objective::social))
      CHECK(report.ratio <= 10.0 + 1e-9);  // n <= 8 in these draws
  }
  SUBCASE("pick the loser stays within the proven factors") {
    SplitMix64 rng(14);
    facloc::GenOptions options;
    options.ptl = true;
    std::vector<Instance> instances;
    for (int trial = 0; trial < 40; ++trial)
      instances.push_back(facloc::random_instance(rng, options));
    for (const auto& report : facloc::ratio_report(
             Mechanism::pick_the_loser, instances, Objective::social))
      CHECK(report.ratio <= 2.0 + 1e-9);
    for (const auto& report : facloc::ratio_report(
             Mechanism::pick_the_loser, instances, Objective::max))
      CHECK(report.ratio <= 4.0 + 1e-9);
  }
}

TEST_CASE("instance digest is stable and sensitive") {
  const auto a = make({0.0, 1.0}, 1, CostFunction::linear(1.0));
  const auto b = make({0.0, 2.0}, 1, CostFunction::linear(1.0));
  CHECK(facloc::instance_digest(a) == facloc::instance_digest(a));
  CHECK(facloc::instance_digest(a) != facloc::instance_digest(b));
}
