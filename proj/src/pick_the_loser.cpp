#include "facloc/pick_the_loser.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "facloc/rng.hpp"

namespace facloc {

namespace {

std::vector<int> order_by_location(const std::vector<double>& xs) {
  std::vector<int> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return xs[a] < xs[b] || (xs[a] == xs[b] && a < b);
  });
  return order;
}

bool has_duplicates(const std::vector<double>& xs,
                    const std::vector<int>& order) {
  for (std::size_t p = 1; p < order.size(); ++p)
    if (xs[order[p - 1]] == xs[order[p]]) return true;
  return false;
}

// kappa * int_0^{1/kappa} prod_j min(1, kappa_j t) dt. The integrand is a
// monomial between consecutive breakpoints 1/kappa_j, integrated exactly.
double loser_probability(double kappa, const std::vector<double>& others) {
  const double upper = 1.0 / kappa;
  std::vector<double> cuts;
  for (double kj : others) {
    const double t = 1.0 / kj;
    if (t < upper) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(upper);

  double coeff = 1.0;
  for (double kj : others) coeff *= kj;
  int power = static_cast<int>(others.size());

  double total = 0.0;
  double lo = 0.0;
  std::size_t next = 0;
  std::vector<double> sorted_others = others;  // descending kappa = t order
  std::sort(sorted_others.begin(), sorted_others.end(), std::greater<>());
  for (double hi : cuts) {
    total += coeff *
             (std::pow(hi, power + 1) - std::pow(lo, power + 1)) /
             static_cast<double>(power + 1);
    while (next < sorted_others.size() && 1.0 / sorted_others[next] <= hi) {
      coeff /= sorted_others[next];
      --power;
      ++next;
    }
    lo = hi;
  }
  return kappa * total;
}

}  // namespace

LoserReport loser_probabilities(const Instance& inst) {
  inst.ensure_valid();
  const auto n = inst.locations.size();
  if (n != static_cast<std::size_t>(inst.k) + 1)
    throw std::domain_error("pick_the_loser: requires n = k + 1 agents");

  LoserReport report;
  report.order = order_by_location(inst.locations);
  report.even_rank.assign(n, false);
  report.kappa.assign(n, 0.0);
  report.loser_prob.assign(n, 0.0);

  if (has_duplicates(inst.locations, report.order)) {
    report.all_served = true;
    return report;
  }

  std::vector<int> evens;
  std::vector<double> even_kappas;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (pos % 2 == 0) continue;  // 1-indexed odd rank
    const int agent = report.order[pos];
    report.even_rank[agent] = true;
    const double x = inst.locations[agent];
    double gap = inst.locations[report.order[pos - 1]];
    gap = x - gap;
    if (pos + 1 < n)
      gap = std::min(gap, inst.locations[report.order[pos + 1]] - x);
    report.kappa[agent] = inst.cost.eval(gap);
    evens.push_back(agent);
    even_kappas.push_back(report.kappa[agent]);
  }

  for (std::size_t e = 0; e < evens.size(); ++e) {
    std::vector<double> others;
    for (std::size_t o = 0; o < evens.size(); ++o)
      if (o != e) others.push_back(even_kappas[o]);
    report.loser_prob[evens[e]] = loser_probability(even_kappas[e], others);
  }

  for (int agent : evens)
    report.expected_social_cost +=
        report.loser_prob[agent] * report.kappa[agent];
  return report;
}

PtlSample ptl_sample(const Instance& inst, std::uint64_t seed) {
  const LoserReport report = loser_probabilities(inst);
  PtlSample sample;

  if (report.all_served) {
    sample.facilities = inst.locations;
    std::sort(sample.facilities.begin(), sample.facilities.end());
    sample.facilities.erase(
        std::unique(sample.facilities.begin(), sample.facilities.end()),
        sample.facilities.end());
    return sample;
  }

  SplitMix64 rng(seed);
  int loser = -1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t pos = 0; pos < report.order.size(); ++pos) {
    if (pos % 2 == 0) continue;
    const int agent = report.order[pos];
    const double s = rng.uniform01_open();
    const double scaled = report.kappa[agent] / s;
    if (scaled < best) {
      best = scaled;
      loser = agent;
    }
  }
  sample.loser = loser;
  for (std::size_t i = 0; i < inst.locations.size(); ++i)
    if (static_cast<int>(i) != loser)
      sample.facilities.push_back(inst.locations[i]);
  std::sort(sample.facilities.begin(), sample.facilities.end());
  return sample;
}

double ptl_expected_social_cost(const Instance& inst) {
  return loser_probabilities(inst).expected_social_cost;
}

double ptl_expected_cost(const Instance& reported, double true_location) {
  const LoserReport report = loser_probabilities(reported);
  if (report.all_served) {
    // Facilities at all distinct reported locations.
    double best = std::numeric_limits<double>::infinity();
    for (double v : reported.locations)
      best = std::min(best, std::abs(true_location - v));
    return reported.cost.eval(best);
  }

  // Two smallest distances from the true location to the reported profile,
  // so excluding a single served agent is O(1).
  const auto n = reported.locations.size();
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = min1;
  std::size_t arg1 = n;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::abs(true_location - reported.locations[j]);
    if (d < min1) {
      min2 = min1;
      min1 = d;
      arg1 = j;
    } else if (d < min2) {
      min2 = d;
    }
  }

  double expected = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    const double q = report.loser_prob[e];
    if (q == 0.0) continue;
    const double d = (e == arg1) ? min2 : min1;
    expected += q * reported.cost.eval(d);
  }
  return expected;
}

double ptl_cost_under_report(const Instance& inst, int agent,
                             double reported_location) {
  Instance reported = inst;
  reported.locations[agent] = reported_location;
  return ptl_expected_cost(reported, inst.locations[agent]);
}

}  // namespace facloc
