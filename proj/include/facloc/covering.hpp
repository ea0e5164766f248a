#pragma once

#include <span>
#include <vector>

namespace facloc {

// A covering of agent locations with disjoint intervals [starts[i],
// starts[i] + length] of common minimal length. Touching endpoints are
// allowed: starts[i+1] >= starts[i] + length.
struct Covering {
  double length = 0.0;
  std::vector<double> starts;
};

// Greedy cover with intervals of the given length: repeatedly open an
// interval at the leftmost uncovered location. Returns the interval starts;
// their count is the minimum number of intervals of this length that cover
// the locations. Locations must be nonempty and sorted ascending.
std::vector<double> greedy_cover(std::span<const double> sorted_locations,
                                 double candidate_length);

// Minimal covering with at most k intervals. The minimal length is found by
// binary search over the candidate set {0} plus all pairwise distances of
// the distinct locations. Duplicated locations are collapsed first.
Covering min_cover(std::span<const double> locations, int k);

// Adjusts a covering of locations in [0, L] so every interval lies inside
// [0, L], keeping disjointness and coverage:
// starts'[i] = min(starts[i], L - (k+1-i) * length), 1-indexed.
Covering fit_bounded(const Covering& cov, double domain_length);

}  // namespace facloc
