#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "facloc/instance.hpp"

namespace facloc {

// Exact description of the Pick the Loser lottery for an n = k+1 instance.
// Agents are ranked by reported location; odd-ranked agents (1-indexed)
// always receive a facility, the loser is drawn among the even-ranked ones
// with probability proportional to surviving the scaled-cost comparison.
// All per-agent vectors are aligned with the instance's location order;
// kappa and loser_prob are 0 for odd-ranked agents.
struct LoserReport {
  std::vector<int> order;        // agent indices sorted by location
  std::vector<bool> even_rank;   // per agent: even position in sorted order
  std::vector<double> kappa;     // per agent: cost to nearest other agent
  std::vector<double> loser_prob;
  bool all_served = false;       // duplicate locations short-circuit
  double expected_social_cost = 0.0;
};

// Exact loser probabilities q_i = kappa_i * int_0^{1/kappa_i}
// prod_{j != i} min(1, kappa_j t) dt, integrated segment by segment between
// the breakpoints 1/kappa_j. Requires n = k+1.
LoserReport loser_probabilities(const Instance& inst);

struct PtlSample {
  std::optional<int> loser;  // unset when duplicates serve everyone
  std::vector<double> facilities;
};

// Draws the uniform scale samples and picks the loser; deterministic for a
// given seed. Floating-point ties break toward the lower agent index.
PtlSample ptl_sample(const Instance& inst, std::uint64_t seed);

// Sum over even-ranked agents of q_i * kappa_i. Equals the expected max
// cost as well: only the loser pays.
double ptl_expected_social_cost(const Instance& inst);

// Expected cost of an arbitrary true location under the lottery induced by
// the given (reported) instance: sum over possible losers of q_loser times
// the cost to the nearest served location.
double ptl_expected_cost(const Instance& reported, double true_location);

// Expected cost of agent `agent` (true location inst.locations[agent]) when
// they report `reported_location` and everyone else reports truthfully.
// Exact expectation over the loser draw of the resulting profile.
double ptl_cost_under_report(const Instance& inst, int agent,
                             double reported_location);

}  // namespace facloc
