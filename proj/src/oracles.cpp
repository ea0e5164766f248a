#include "facloc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "facloc/covering.hpp"
#include "facloc/distribution.hpp"
#include "facloc/equal_cost.hpp"
#include "facloc/pick_the_loser.hpp"

namespace facloc {

namespace {

void require_concave(const Instance& inst, const char* who) {
  if (!inst.cost.concave())
    throw std::invalid_argument(std::string(who) +
                                ": requires a concave cost function");
}

// Expected-cost evaluator for arbitrary reported profiles. Equal Cost
// reuses placement distributions across profiles with the same covering
// length; the covering itself is cheap.
class ExpectedCostEvaluator {
 public:
  ExpectedCostEvaluator(Mechanism mech, const Instance& base)
      : mech_(mech), base_(base) {}

  double operator()(const std::vector<double>& reported,
                    double true_location) {
    switch (mech_) {
      case Mechanism::planted_mean: {
        double mean = 0.0;
        for (double x : reported) mean += x;
        mean /= static_cast<double>(reported.size());
        return base_.cost.eval(std::abs(true_location - mean));
      }
      case Mechanism::pick_the_loser: {
        Instance rep = base_;
        rep.locations = reported;
        return ptl_expected_cost(rep, true_location);
      }
      case Mechanism::equal_cost: {
        Covering cov = min_cover(reported, base_.k);
        if (base_.domain_length)
          cov = fit_bounded(cov, *base_.domain_length);
        auto it = cache_.find(cov.length);
        if (it == cache_.end())
          it = cache_
                   .emplace(cov.length,
                            solve_distribution(base_.cost, cov.length))
                   .first;
        EcOutcome out{cov, it->second, base_.cost};
        return ec_agent_expected_cost(out, true_location);
      }
    }
    return 0.0;
  }

 private:
  Mechanism mech_;
  Instance base_;
  std::unordered_map<double, FacilityDistribution> cache_;
};

// Misreport candidates for one agent: a uniform grid over the bounding box
// padded by pad_lengths * covering length, the other agents' locations, and
// the midpoints between consecutive other agents.
std::vector<double> misreport_candidates(const Instance& inst, int agent,
                                         const GridSpec& grid,
                                         double covering_length) {
  double lo = inst.locations[0];
  double hi = inst.locations[0];
  for (double x : inst.locations) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double pad = grid.pad_lengths * covering_length;
  lo -= pad;
  hi += pad;
  if (hi <= lo) {
    lo -= 1.0;
    hi += 1.0;
  }

  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(grid.points) +
                     2 * inst.locations.size());
  for (int t = 0; t < grid.points; ++t)
    candidates.push_back(lo + (hi - lo) * static_cast<double>(t) /
                                  static_cast<double>(grid.points - 1));

  std::vector<double> others;
  for (std::size_t j = 0; j < inst.locations.size(); ++j)
    if (static_cast<int>(j) != agent) others.push_back(inst.locations[j]);
  std::sort(others.begin(), others.end());
  for (std::size_t j = 0; j < others.size(); ++j) {
    candidates.push_back(others[j]);
    if (j + 1 < others.size())
      candidates.push_back(0.5 * (others[j] + others[j + 1]));
  }

  if (inst.domain_length)
    for (double& y : candidates)
      y = std::clamp(y, 0.0, *inst.domain_length);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

}  // namespace

double opt_max_cost(const Instance& inst) {
  inst.ensure_valid();
  require_concave(inst, "opt_max_cost");
  const Covering cov = min_cover(inst.locations, inst.k);
  return inst.cost.eval(cov.length / 2.0);
}

double opt_social_cost(const Instance& inst) {
  inst.ensure_valid();
  require_concave(inst, "opt_social_cost");

  std::vector<double> xs = inst.locations;
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  const auto blocks = static_cast<std::size_t>(
      std::min<long long>(inst.k, static_cast<long long>(n)));
  if (blocks == n) return 0.0;

  // Cost of serving agents [i, j] with one facility; the optimum is at an
  // agent location because the block objective is concave between
  // consecutive agents.
  const auto block_cost = [&](std::size_t i, std::size_t j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = i; p <= j; ++p) {
      double total = 0.0;
      for (std::size_t t = i; t <= j; ++t)
        total += inst.cost.eval(std::abs(xs[t] - xs[p]));
      best = std::min(best, total);
    }
    return best;
  };

  const double inf = std::numeric_limits<double>::infinity();
  // dp[m][j]: first j agents served by m facilities.
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

double check_equal_cost(const CostFunction& c, double length, int points,
                        std::uint64_t seed) {
  const FacilityDistribution dist = solve_distribution(c, length);
  const double target = dist.equal_cost();
  SplitMix64 rng(seed);
  double worst = 0.0;
  const auto probe = [&](double x) {
    worst = std::max(worst, std::abs(expected_cost_at(dist, c, x) - target));
  };
  probe(0.0);
  probe(length);
  probe(length / 2.0);
  for (int i = 0; i < points; ++i) probe(length * rng.uniform01());
  return worst;
}

DeviationFinding deviation_search(Mechanism mech, const Instance& inst,
                                  const GridSpec& grid) {
  inst.ensure_valid();
  ExpectedCostEvaluator eval(mech, inst);
  const double covering_length = min_cover(inst.locations, inst.k).length;

  const auto n = inst.locations.size();
  std::vector<double> truthful(n);
  for (std::size_t i = 0; i < n; ++i)
    truthful[i] = eval(inst.locations, inst.locations[i]);

  DeviationFinding best;
  std::vector<double> reported = inst.locations;
  for (std::size_t i = 0; i < n; ++i) {
    const auto candidates =
        misreport_candidates(inst, static_cast<int>(i), grid, covering_length);
    for (double y : candidates) {
      reported[i] = y;
      const double deviated = eval(reported, inst.locations[i]);
      const double gain = truthful[i] - deviated;
      if (gain > best.gain) {
        best.gain = gain;
        best.agents = {static_cast<int>(i)};
        best.misreports = {y};
        best.truthful_costs = {truthful[i]};
        best.deviated_costs = {deviated};
      }
    }
    reported[i] = inst.locations[i];
  }
  return best;
}

DeviationFinding coalition_search(Mechanism mech, const Instance& inst,
                                  int coalition_size, const GridSpec& grid) {
  if (coalition_size < 1 || coalition_size > 2)
    throw std::invalid_argument(
        "coalition_search: only coalition sizes 1 and 2 are supported");
  if (coalition_size == 1) return deviation_search(mech, inst, grid);

  inst.ensure_valid();
  ExpectedCostEvaluator eval(mech, inst);
  const double covering_length = min_cover(inst.locations, inst.k).length;
  const bool strong = mech == Mechanism::pick_the_loser;

  const auto n = inst.locations.size();
  std::vector<double> truthful(n);
  for (std::size_t i = 0; i < n; ++i)
    truthful[i] = eval(inst.locations, inst.locations[i]);

  DeviationFinding best;
  std::vector<double> reported = inst.locations;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci =
        misreport_candidates(inst, static_cast<int>(i), grid, covering_length);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto cj = misreport_candidates(inst, static_cast<int>(j), grid,
                                           covering_length);
      for (double yi : ci) {
        reported[i] = yi;
        for (double yj : cj) {
          reported[j] = yj;
          const double di = eval(reported, inst.locations[i]);
          const double dj = eval(reported, inst.locations[j]);
          const double gain_i = truthful[i] - di;
          const double gain_j = truthful[j] - dj;
          double score;
          if (strong) {
            // One member strictly gains while nobody loses.
            if (std::min(gain_i, gain_j) < -grid.tolerance) continue;
            score = std::max(gain_i, gain_j);
          } else {
            // Every member strictly gains.
            score = std::min(gain_i, gain_j);
          }
          if (score > best.gain) {
            best.gain = score;
            best.agents = {static_cast<int>(i), static_cast<int>(j)};
            best.misreports = {yi, yj};
            best.truthful_costs = {truthful[i], truthful[j]};
            best.deviated_costs = {di, dj};
          }
        }
        reported[j] = inst.locations[j];
      }
      reported[i] = inst.locations[i];
    }
  }
  return best;
}

RatioReport ratio_report(Mechanism mech, const Instance& inst,
                         Objective objective) {
  inst.ensure_valid();
  RatioReport report;
  report.objective = objective;
  report.instance_digest = instance_digest(inst);

  switch (mech) {
    case Mechanism::equal_cost: {
      const EcOutcome out = ec_run(inst);
      report.mechanism_value = objective == Objective::max
                                   ? ec_expected_max_cost(out, inst)
                                   : ec_expected_social_cost(out, inst);
      break;
    }
    case Mechanism::pick_the_loser:
      // Only the loser pays, so max cost and social cost coincide.
      report.mechanism_value = ptl_expected_social_cost(inst);
      break;
    case Mechanism::planted_mean: {
      double mean = 0.0;
      for (double x : inst.locations) mean += x;
      mean /= static_cast<double>(inst.locations.size());
      double worst = 0.0, total = 0.0;
      for (double x : inst.locations) {
        const double c = inst.cost.eval(std::abs(x - mean));
        worst = std::max(worst, c);
        total += c;
      }
      report.mechanism_value = objective == Objective::max ? worst : total;
      break;
    }
  }

  report.optimum = objective == Objective::max ? opt_max_cost(inst)
                                               : opt_social_cost(inst);
  if (report.optimum > 0.0)
    report.ratio = report.mechanism_value / report.optimum;
  else
    report.ratio = report.mechanism_value == 0.0
                       ? 1.0
                       : std::numeric_limits<double>::infinity();
  return report;
}

std::vector<RatioReport> ratio_report(Mechanism mech,
                                      std::span<const Instance> instances,
                                      Objective objective) {
  std::vector<RatioReport> reports;
  reports.reserve(instances.size());
  for (const Instance& inst : instances)
    reports.push_back(ratio_report(mech, inst, objective));
  return reports;
}

CostFunction random_concave_cost(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0:
      return CostFunction::linear(rng.uniform(0.5, 2.5));
    case 1: {
      const double beta2 = rng.uniform(0.3, 1.5);
      const double beta1 = beta2 * rng.uniform(1.2, 4.0);
      const double width = rng.below(2) == 0 ? 1.0 : rng.uniform(0.5, 2.0);
      return CostFunction::piecewise_linear({beta1, beta2}, width);
    }
    case 2: {
      const auto pieces = 2 + rng.below(7);
      std::vector<double> slopes;
      double slope = rng.uniform(0.8, 3.0);
      for (std::uint64_t i = 0; i < pieces; ++i) {
        slopes.push_back(slope);
        slope *= rng.uniform(0.55, 1.0);
      }
      return CostFunction::piecewise_linear(std::move(slopes),
                                            rng.uniform(0.5, 2.0));
    }
    default:
      return CostFunction::exponential(rng.uniform(0.02, 1.2));
  }
}

Instance random_instance(SplitMix64& rng, const GenOptions& options) {
  Instance inst;
  inst.cost = random_concave_cost(rng);

  const int lo = options.ptl ? std::max(options.min_agents, 2)
                             : options.min_agents;
  const int n = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                         options.max_agents - lo + 1)));
  if (options.ptl)
    inst.k = n - 1;
  else
    inst.k = 1 + static_cast<int>(
                     rng.below(static_cast<std::uint64_t>(options.max_k)));

  const auto draw = [&]() -> double {
    if (options.bounded) {
      // Dyadic grid keeps every derived quantity exactly representable.
      return static_cast<double>(rng.below(1ULL << 27)) * 0x1.0p-20;
    }
    return rng.uniform(0.0, 100.0);
  };
  for (int i = 0; i < n; ++i) inst.locations.push_back(draw());
  if (options.ptl) {
    // The mechanism proper needs distinct locations.
    std::vector<double> sorted = inst.locations;
    std::sort(sorted.begin(), sorted.end());
    while (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      for (int i = 0; i < n; ++i) inst.locations[i] = draw();
      sorted = inst.locations;
      std::sort(sorted.begin(), sorted.end());
    }
  }
  if (options.bounded) inst.domain_length = 128.0;
  return inst;
}

std::uint64_t instance_digest(const Instance& inst) {
  const std::string text = instance_to_json(inst);
  std::uint64_t hash = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

}  // namespace facloc
