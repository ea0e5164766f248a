#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "facloc/covering.hpp"
#include "facloc/distribution.hpp"
#include "facloc/instance.hpp"

namespace facloc {

// Result of the Equal Cost mechanism: the minimal covering, the equalizing
// placement variable X, and the alternating orientation — interval i
// (1-indexed left to right) gets its facility at start + X when i is odd
// and at start + length - X when i is even.
struct EcOutcome {
  Covering covering;
  FacilityDistribution dist;
  CostFunction cost = CostFunction::linear(1.0);

  // Facility locations for the realization X = x, one per interval.
  std::vector<double> facilities_at(double x) const;
};

// Runs steps 1-2 on a concave instance (covering, bounded-domain
// adjustment, distribution). Radius costs are rejected; use radius_variant.
EcOutcome ec_run(const Instance& inst);

// Draws one realization of X and places the facilities. Deterministic for
// a given seed.
std::vector<double> ec_sample(const EcOutcome& outcome, std::uint64_t seed);

// Expected connection cost of an agent at true_location: exact support
// enumeration for discrete X, analytic piecewise integration for the
// exponential mixture.
double ec_agent_expected_cost(const EcOutcome& outcome, double true_location);

// E[max_i cost(x_i, facilities)] over the placement variable.
double ec_expected_max_cost(const EcOutcome& outcome, const Instance& inst);

// Sum of the agents' expected connection costs.
double ec_expected_social_cost(const EcOutcome& outcome, const Instance& inst);

// The radius-cost variant: midpoint placement when the covering length is
// at most 2r, otherwise no facilities at all (nullopt; every agent pays 1).
std::optional<std::vector<double>> radius_variant(const Instance& inst);

}  // namespace facloc
