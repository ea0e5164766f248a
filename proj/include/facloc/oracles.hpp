#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "facloc/instance.hpp"
#include "facloc/rng.hpp"

namespace facloc {

enum class Mechanism { equal_cost, pick_the_loser, planted_mean };
enum class Objective { social, max };

// Optimal max cost c(length/2), with the minimal covering length.
// Requires a concave cost function.
double opt_max_cost(const Instance& inst);

// Exact optimal social cost. Sorted agents are served in contiguous blocks;
// for concave costs the block optimum sits at an agent location, so a
// dynamic program over blocks with agent-location candidates is exact.
double opt_social_cost(const Instance& inst);

// Max over sampled x in [0, length] of |E[c(|x - X|)] - C(length)|.
// Samples `points` seeded random points plus 0, length/2, and length.
double check_equal_cost(const CostFunction& c, double length, int points,
                        std::uint64_t seed);

struct GridSpec {
  int points = 200;          // misreport grid resolution per agent
  double pad_lengths = 2.0;  // grid span: bounding box padded by this * length
  double tolerance = 1e-9;
};

struct DeviationFinding {
  std::vector<int> agents;             // deviating coalition
  std::vector<double> misreports;      // their reported locations
  std::vector<double> truthful_costs;  // expected costs under truth
  std::vector<double> deviated_costs;  // expected costs after deviating
  // Best score found: individual gain for unilateral search, the
  // coalition criterion for coalition search.
  double gain = -std::numeric_limits<double>::infinity();
};

// Best unilateral gain over all agents and grid misreports (grid over the
// padded bounding box, plus the other agents' locations and their
// midpoints). A gain above the tolerance is a strategyproofness violation.
DeviationFinding deviation_search(Mechanism mech, const Instance& inst,
                                  const GridSpec& grid);

// Joint misreport search for coalitions of at most 2 agents. For
// pick_the_loser the score is a strong-GSP criterion (largest gain among
// deviations where no member loses); for equal_cost and planted_mean it is
// a weak-GSP criterion (largest all-members-gain).
DeviationFinding coalition_search(Mechanism mech, const Instance& inst,
                                  int coalition_size, const GridSpec& grid);

struct RatioReport {
  double mechanism_value = 0.0;
  double optimum = 0.0;
  double ratio = 1.0;
  Objective objective = Objective::social;
  std::uint64_t instance_digest = 0;
};

RatioReport ratio_report(Mechanism mech, const Instance& inst,
                         Objective objective);
std::vector<RatioReport> ratio_report(Mechanism mech,
                                      std::span<const Instance> instances,
                                      Objective objective);

// Seeded random instances for the verification suites: locations uniform
// in [0, 100], cost drawn among linear / two-piece / random nonincreasing
// piecewise (up to 8 pieces) / exponential.
struct GenOptions {
  int min_agents = 2;
  int max_agents = 8;
  int max_k = 4;
  bool ptl = false;      // n = k + 1 with distinct locations
  bool bounded = false;  // domain [0, 128] with locations on a dyadic grid
};

CostFunction random_concave_cost(SplitMix64& rng);
Instance random_instance(SplitMix64& rng, const GenOptions& options);

std::uint64_t instance_digest(const Instance& inst);

}  // namespace facloc
