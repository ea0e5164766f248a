#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "facloc/distribution.hpp"
#include "facloc/oracles.hpp"
#include "facloc/rng.hpp"

using facloc::CostFunction;
using facloc::FacilityDistribution;
using facloc::LambdaSystem;
using facloc::SplitMix64;

namespace {

LambdaSystem make_system(std::vector<std::vector<double>> rows) {
  LambdaSystem sys;
  sys.rows = rows.size();
  sys.cols = rows[0].size();
  for (const auto& row : rows)
    sys.entries.insert(sys.entries.end(), row.begin(), row.end());
  return sys;
}

// Geometric-mode roots of the two-piece recurrence.
void two_piece_roots(double b1, double b2, double* r1, double* r2) {
  const double disc = std::sqrt(b1 * b1 - (b1 - b2) * (b1 - b2));
  *r1 = (b1 + disc) / (b1 - b2);
  *r2 = (b1 - disc) / (b1 - b2);
}

// Closed-form solution for two-piece slopes at unit width, probabilities in
// sorted support order. For integer lengths m the interior weights follow
// r1^i + r1^(m-i); for fractional lengths in (m, m+1) the weight of integer
// point i (and of length-i) is r1^(m+1-i) - r2^(m+1-i).
std::vector<double> two_piece_closed_form(double b1, double b2,
                                          double length) {
  double r1, r2;
  two_piece_roots(b1, b2, &r1, &r2);
  const auto m = static_cast<int>(std::floor(length));
  std::vector<double> probs;
  if (length == std::floor(length)) {
    for (int i = 0; i <= m; ++i)
      probs.push_back(std::pow(r1, i) + std::pow(r1, m - i));
  } else {
    std::vector<double> u(m + 1);
    for (int i = 0; i <= m; ++i)
      u[i] = std::pow(r1, m + 1 - i) - std::pow(r2, m + 1 - i);
    for (int i = 0; i <= m; ++i) {
      probs.push_back(u[i]);        // integer point i
      probs.push_back(u[m - i]);    // point length - (m - i)
    }
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace

TEST_CASE("support_points") {
  CHECK(facloc::support_points(2.0) == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(facloc::support_points(1.5) ==
        std::vector<double>{0.0, 0.5, 1.0, 1.5});
  CHECK(facloc::support_points(0.0) == std::vector<double>{0.0});
  CHECK_THROWS_AS(facloc::support_points(-1.0), std::domain_error);
}

TEST_CASE("build_system reproduces the integer-length matrices") {
  const std::vector<double> ones{1.0, 1.0};
  const auto sys = facloc::build_system(2.0, ones);
  REQUIRE(sys.rows == 2);
  REQUIRE(sys.cols == 3);
  CHECK(sys.entries == std::vector<double>{1, -1, -1, 1, 1, -1});

  const std::vector<double> single{1.0};
  const auto tiny = facloc::build_system(1.0, single);
  CHECK(tiny.entries == std::vector<double>{1, -1});

  const std::vector<double> two{2.0, 1.0};
  const auto mixed = facloc::build_system(2.0, two);
  CHECK(mixed.entries == std::vector<double>{2, -2, -1, 1, 2, -2});
}

TEST_CASE("build_system matches the index formulas on both length parities") {
  const std::vector<double> slopes{3.0, 2.0, 1.5, 1.0, 0.5};
  const auto slope_at = [&](long long idx) {
    return slopes[std::min<long long>(idx, slopes.size() - 1)];
  };

  SUBCASE("integer length: entry (i,j) is slope[i-j] or -slope[j-i-1]") {
    const auto sys = facloc::build_system(4.0, slopes);
    for (std::size_t i = 0; i < sys.rows; ++i)
      for (std::size_t j = 0; j < sys.cols; ++j) {
        const auto ii = static_cast<long long>(i);
        const auto jj = static_cast<long long>(j);
        const double expected =
            ii >= jj ? slope_at(ii - jj) : -slope_at(jj - ii - 1);
        CHECK(sys.at(i, j) == expected);
      }
  }
  SUBCASE("fractional length: entry (i,j) uses floor of half the offset") {
    const auto sys = facloc::build_system(4.5, slopes);
    REQUIRE(sys.cols == 10);
    for (std::size_t i = 0; i < sys.rows; ++i)
      for (std::size_t j = 0; j < sys.cols; ++j) {
        const auto ii = static_cast<long long>(i);
        const auto jj = static_cast<long long>(j);
        const double expected = ii >= jj ? slope_at((ii - jj) / 2)
                                         : -slope_at((jj - ii - 1) / 2);
        CHECK(sys.at(i, j) == expected);
      }
  }
}

TEST_CASE("solve_symmetric on the linear systems") {
  const auto p1 = facloc::solve_symmetric(make_system({{1, -1}}));
  CHECK(p1 == std::vector<double>{0.5, 0.5});

  const auto p2 =
      facloc::solve_symmetric(make_system({{1, -1, -1}, {1, 1, -1}}));
  REQUIRE(p2.size() == 3);
  CHECK(p2[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p2[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("solve_symmetric names the violated structural condition") {
  CHECK_THROWS_WITH_AS(
      facloc::solve_symmetric(make_system({{1, -1, -1}})),
      doctest::Contains("one more column"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      facloc::solve_symmetric(make_system({{1, -1, -1}, {1, 2, -1}})),
      doctest::Contains("diagonals not constant"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      facloc::solve_symmetric(make_system({{1, -2, -1}, {1, 1, -2}})),
      doctest::Contains("negate"), std::domain_error);
  CHECK_THROWS_WITH_AS(
      facloc::solve_symmetric(make_system({{1, -1, -2}, {2, 1, -1}})),
      doctest::Contains("increasing"), std::domain_error);
}

TEST_CASE("solve_distribution dispatch") {
  SUBCASE("linear closed form") {
    const auto dist =
        facloc::solve_distribution(CostFunction::linear(1.0), 4.0);
    CHECK(dist.support() == std::vector<double>{0.0, 4.0});
    CHECK(dist.probs() == std::vector<double>{0.5, 0.5});
    CHECK(dist.equal_cost() == 2.0);
  }
  SUBCASE("exponential mixture") {
    const auto dist =
        facloc::solve_distribution(CostFunction::exponential(1.0), 2.0);
    CHECK(dist.kind() == FacilityDistribution::Kind::exponential_mixture);
    CHECK(dist.equal_cost() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dist.endpoint_prob() == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("degenerate length") {
    const auto dist =
        facloc::solve_distribution(CostFunction::exponential(1.0), 0.0);
    CHECK(dist.support() == std::vector<double>{0.0});
    CHECK(dist.equal_cost() == 0.0);
  }
  SUBCASE("radius rejected") {
    CHECK_THROWS_AS(
        facloc::solve_distribution(CostFunction::radius(1.0), 2.0),
        std::invalid_argument);
  }
}

TEST_CASE("two-piece solver agrees with the closed form") {
  for (double ratio : {1.5, 2.0, 5.0}) {
    for (double length : {1.0, 2.0, 2.5, 7.0, 10.5}) {
      const double b2 = 1.0;
      const double b1 = ratio;
      const auto c = CostFunction::piecewise_linear({b1, b2}, 1.0);
      const auto dist = facloc::solve_distribution(c, length);
      const auto expected = two_piece_closed_form(b1, b2, length);
      REQUIRE(dist.probs().size() == expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(dist.probs()[i] == doctest::Approx(expected[i]).epsilon(1e-11));
    }
  }
}

TEST_CASE("solver path equals the explicit matrix path") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> slopes;
    double s = rng.uniform(1.0, 3.0);
    const auto pieces = 2 + rng.below(5);
    for (std::uint64_t i = 0; i < pieces; ++i) {
      slopes.push_back(s);
      s *= rng.uniform(0.6, 1.0);
    }
    const double length = rng.uniform(0.2, 12.0);
    const auto c = CostFunction::piecewise_linear(slopes, 1.0);
    const auto dist = facloc::solve_distribution(c, length);
    const auto via_matrix =
        facloc::solve_symmetric(facloc::build_system(length, slopes));
    REQUIRE(dist.probs().size() == via_matrix.size());
    for (std::size_t i = 0; i < via_matrix.size(); ++i)
      CHECK(dist.probs()[i] ==
            doctest::Approx(via_matrix[i]).epsilon(1e-13));
  }
}

TEST_CASE("expected_cost_at") {
  SUBCASE("linear interior point") {
    const auto c = CostFunction::linear(1.0);
    const auto dist = facloc::solve_distribution(c, 2.0);
    CHECK(facloc::expected_cost_at(dist, c, 0.7) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("exponential mixture is flat inside the interval") {
    const auto c = CostFunction::exponential(1.0);
    const auto dist = facloc::solve_distribution(c, 2.0);
    SplitMix64 rng(6);
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(0.0, 2.0);
      CHECK(facloc::expected_cost_at(dist, c, x) ==
            doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("point mass") {
    const auto dist = FacilityDistribution::point_mass(0.0);
    CHECK(facloc::expected_cost_at(dist, CostFunction::linear(2.0), 0.0) ==
          0.0);
  }
  SUBCASE("outside the interval, both kinds") {
    const auto lin = CostFunction::linear(1.0);
    const auto dl = facloc::solve_distribution(lin, 2.0);
    CHECK(facloc::expected_cost_at(dl, lin, 5.0) ==
          doctest::Approx(0.5 * (5.0 + 3.0)).epsilon(1e-15));
    const auto exp = CostFunction::exponential(0.7);
    const auto de = facloc::solve_distribution(exp, 2.0);
    // Direct two-endpoint + uniform expectation at x = 3.
    const double w = de.endpoint_prob();
    double quad = 0.0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
      const double t = (i + 0.5) * 2.0 / steps;
      quad += exp.eval(3.0 - t) * (2.0 / steps);
    }
    const double reference =
        w * (exp.eval(3.0) + exp.eval(1.0)) + (0.7 * w) * quad;
    CHECK(facloc::expected_cost_at(de, exp, 3.0) ==
          doctest::Approx(reference).epsilon(1e-8));
  }
}

TEST_CASE("equal_cost_value closed forms") {
  CHECK(facloc::equal_cost_value(CostFunction::linear(2.0), 3.0) == 3.0);
  CHECK(facloc::equal_cost_value(CostFunction::exponential(2.0), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(facloc::equal_cost_value(CostFunction::linear(1.0), 0.0) == 0.0);
}

TEST_CASE("equal-cost property on random cost functions") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = facloc::random_concave_cost(rng);
    const double length = rng.uniform(0.05, 20.0);
    CHECK(facloc::check_equal_cost(c, length, 100, rng.next()) < 1e-9);
  }
}

TEST_CASE("solution is symmetric, nonnegative, normalized and unique") {
  SplitMix64 rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> slopes;
    double s = rng.uniform(0.5, 4.0);
    const auto pieces = 1 + rng.below(12);
    for (std::uint64_t i = 0; i < pieces; ++i) {
      slopes.push_back(s);
      s *= rng.uniform(0.5, 1.0);
    }
    const double length = rng.uniform(0.1, 25.0);
    const auto sys = facloc::build_system(length, slopes);
    const auto p = facloc::solve_symmetric(sys);

    double total = 0.0;
    for (double v : p) total += v;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (std::size_t j = 0; j < p.size(); ++j) {
      CHECK(p[j] >= -1e-12);
      CHECK(std::abs(p[j] - p[p.size() - 1 - j]) <= 1e-12);
    }

    // Any positive free-variable weights give the same symmetric solution.
    const auto other = facloc::solve_symmetric_weighted(
        sys, rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0));
    for (std::size_t j = 0; j < p.size(); ++j)
      CHECK(std::abs(p[j] - other[j]) <= 1e-12);
  }
}

TEST_CASE("equal cost never exceeds the optimal max cost bound") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = facloc::random_concave_cost(rng);
    const double length = rng.uniform(0.0, 30.0);
    CHECK(facloc::equal_cost_value(c, length) <=
          c.eval(length / 2.0) + 1e-9);
  }
}

TEST_CASE("equal cost is monotone in the length and continuous at integers") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = facloc::random_concave_cost(rng);
    double prev = 0.0;
    for (int i = 1; i <= 120; ++i) {
      const double value = facloc::equal_cost_value(c, i * 0.1);
      CHECK(value >= prev - 1e-12);
      prev = value;
    }
    for (double m : {1.0, 2.0, 5.0}) {
      const double at = facloc::equal_cost_value(c, m);
      CHECK(std::abs(facloc::equal_cost_value(c, m + 1e-8) - at) < 1e-6);
      CHECK(std::abs(facloc::equal_cost_value(c, m - 1e-8) - at) < 1e-6);
    }
  }
}

TEST_CASE("discretized general concave functions equalize as well") {
  const auto sqrt_cost =
      facloc::approximate_concave([](double d) { return std::sqrt(d); }, 12.0);
  for (double length : {1.7, 5.0, 9.25})
    CHECK(facloc::check_equal_cost(sqrt_cost, length, 100, 9) < 1e-9);
}

TEST_CASE("moving an uncovered agent closer to the interval cannot hurt") {
  // E[c(b - a + X(2a))] >= E[c(b - a' + X(2a'))] for a < a' in a common
  // half-piece bin; by the symmetry of X this is the expected cost of the
  // point a + b (resp. a' + b) against the interval [0, 2a].
  SplitMix64 rng(4242);
  const CostFunction cases[] = {
      CostFunction::piecewise_linear({2.0, 1.0}, 1.0),
      CostFunction::piecewise_linear({3.0, 1.4, 0.2}, 1.0),
      CostFunction::piecewise_linear({2.0, 1.0}, 0.75),
      CostFunction::exponential(0.8),
  };
  for (const auto& c : cases) {
    const double bin =
        c.kind() == facloc::CostKind::exponential ? 0.5 : c.piece_width() / 2.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = rng.below(8);
      double a = bin * (static_cast<double>(m) + rng.uniform01());
      double a2 = bin * (static_cast<double>(m) + rng.uniform01());
      if (a > a2) std::swap(a, a2);
      if (a == a2) continue;
      const double b = a2 + rng.uniform(0.0, 10.0);
      const auto da = facloc::solve_distribution(c, 2.0 * a);
      const auto da2 = facloc::solve_distribution(c, 2.0 * a2);
      const double lhs = facloc::expected_cost_at(da, c, a + b);
      const double rhs = facloc::expected_cost_at(da2, c, a2 + b);
      CHECK(lhs >= rhs - 1e-9);
    }
  }
}
