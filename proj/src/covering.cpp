#include "facloc/covering.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace facloc {

std::vector<double> greedy_cover(std::span<const double> sorted_locations,
                                 double candidate_length) {
  if (sorted_locations.empty())
    throw std::domain_error("greedy_cover: no locations");
  std::vector<double> starts;
  std::size_t i = 0;
  while (i < sorted_locations.size()) {
    const double start = sorted_locations[i];
    starts.push_back(start);
    // Compare distances, not endpoints: candidate lengths are differences
    // of locations, so the binding pair compares exactly.
    while (i < sorted_locations.size() &&
           sorted_locations[i] - start <= candidate_length)
      ++i;
  }
  return starts;
}

Covering min_cover(std::span<const double> locations, int k) {
  if (k < 1) throw std::domain_error("min_cover: k must be at least 1");
  if (locations.empty()) throw std::domain_error("min_cover: no locations");

  std::vector<double> xs(locations.begin(), locations.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Candidate lengths: 0 and every pairwise distance.
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      candidates.push_back(xs[j] - xs[i]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  const auto feasible = [&](double len) {
    return greedy_cover(xs, len).size() <= static_cast<std::size_t>(k);
  };

  // The largest candidate (the full span) is always feasible; binary search
  // for the smallest feasible one.
  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feasible(candidates[lo])) {
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (feasible(candidates[mid]))
        hi = mid;
      else
        lo = mid + 1;
    }
  } else {
    hi = lo;
  }

  Covering cov;
  cov.length = candidates[hi];
  cov.starts = greedy_cover(xs, cov.length);
  return cov;
}

Covering fit_bounded(const Covering& cov, double domain_length) {
  const double L = domain_length;
  const auto k = static_cast<int>(cov.starts.size());
  for (double a : cov.starts)
    if (a < 0.0 || a > L)
      throw std::domain_error("fit_bounded: interval start outside [0, L]");
  if (cov.length * k > L)
    throw std::domain_error("fit_bounded: intervals do not fit in [0, L]");

  Covering out;
  out.length = cov.length;
  out.starts.resize(cov.starts.size());
  for (int i = 1; i <= k; ++i) {
    const double cap = L - static_cast<double>(k + 1 - i) * cov.length;
    out.starts[i - 1] = std::min(cov.starts[i - 1], cap);
  }
  return out;
}

}  // namespace facloc
