#include "facloc/equal_cost.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace facloc {

namespace {

// Facility trajectory over the realization value t: position(t) = base + sign*t.
struct Trajectory {
  double base;
  double sign;
};

std::vector<Trajectory> trajectories(const Covering& cov) {
  std::vector<Trajectory> ts;
  ts.reserve(cov.starts.size());
  for (std::size_t i = 0; i < cov.starts.size(); ++i) {
    if (i % 2 == 0)
      ts.push_back({cov.starts[i], 1.0});
    else
      ts.push_back({cov.starts[i] + cov.length, -1.0});
  }
  return ts;
}

double min_distance(const std::vector<Trajectory>& ts, double y, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : ts)
    best = std::min(best, std::abs(y - (f.base + f.sign * t)));
  return best;
}

// Exact integral of 1 - exp(-lambda*D(t)) over [u, v] for affine D.
double exp_integral_affine(double lambda, double u, double v, double du,
                           double dv) {
  const double h = v - u;
  if (dv == du) return h * (1.0 - std::exp(-lambda * du));
  const double s = (dv - du) / h;
  return h + std::exp(-lambda * du) * std::expm1(-lambda * (dv - du)) /
                 (lambda * s);
}

// Integrates 1 - exp(-lambda*D(t)) over [0, len]. D must be piecewise
// affine with kinks covered by the seed breakpoints; segments that still
// fail the affinity probes are bisected.
double integrate_exp_cost(const std::function<double(double)>& D,
                          double lambda, double len,
                          std::vector<double> breakpoints) {
  breakpoints.push_back(0.0);
  breakpoints.push_back(len);
  std::sort(breakpoints.begin(), breakpoints.end());

  std::function<double(double, double, double, double, int)> segment =
      [&](double u, double v, double du, double dv, int depth) -> double {
    const double h = v - u;
    if (h <= 0.0) return 0.0;
    const double mid = 0.5 * (u + v);
    const double dm = D(mid);
    const double probe = u + 0.381966011250105 * h;
    const double dp = D(probe);
    const double tol = 1e-12 * std::max({1.0, std::abs(du), std::abs(dv)});
    const bool affine =
        std::abs(dm - 0.5 * (du + dv)) <= tol &&
        std::abs(dp - (du + 0.381966011250105 * (dv - du))) <= tol;
    if (affine || depth >= 60 || h < 1e-14 * std::max(1.0, len))
      return exp_integral_affine(lambda, u, v, du, dv);
    return segment(u, mid, du, dm, depth + 1) +
           segment(mid, v, dm, dv, depth + 1);
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double u = breakpoints[i];
    const double v = breakpoints[i + 1];
    if (v <= u || v < 0.0 || u > len) continue;
    const double lo = std::max(u, 0.0);
    const double hi = std::min(v, len);
    if (hi <= lo) continue;
    total += segment(lo, hi, D(lo), D(hi), 0);
  }
  return total;
}

// Realization values t in (0, len) where the nearest-facility distance of an
// agent at y can change slope: a facility passes through y, two facilities
// meet, or two facilities straddle y symmetrically.
void agent_breakpoints(const std::vector<Trajectory>& ts, double y, double len,
                       std::vector<double>* out) {
  const auto push = [&](double t) {
    if (t > 0.0 && t < len) out->push_back(t);
  };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    push(ts[i].sign * (y - ts[i].base));
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      if (ts[i].sign != ts[j].sign) {
        push((ts[j].base - ts[i].base) / (ts[i].sign - ts[j].sign));
      } else {
        push(ts[i].sign * (y - 0.5 * (ts[i].base + ts[j].base)));
      }
    }
  }
}

double mixture_expected(const EcOutcome& outcome,
                        const std::function<double(double)>& D,
                        std::vector<double> breakpoints) {
  const double len = outcome.covering.length;
  const double lambda = outcome.dist.lambda();
  const double w = outcome.dist.endpoint_prob();
  const double endpoint_part =
      w * (outcome.cost.eval(D(0.0)) + outcome.cost.eval(D(len)));
  const double integral =
      integrate_exp_cost(D, lambda, len, std::move(breakpoints));
  return endpoint_part + lambda * w * integral;
}

}  // namespace

std::vector<double> EcOutcome::facilities_at(double x) const {
  std::vector<double> out;
  out.reserve(covering.starts.size());
  for (std::size_t i = 0; i < covering.starts.size(); ++i) {
    if (i % 2 == 0)
      out.push_back(covering.starts[i] + x);
    else
      out.push_back(covering.starts[i] + covering.length - x);
  }
  return out;
}

EcOutcome ec_run(const Instance& inst) {
  inst.ensure_valid();
  if (!inst.cost.concave())
    throw std::invalid_argument(
        "ec_run: radius cost is not concave; use radius_variant");

  EcOutcome outcome;
  outcome.covering = min_cover(inst.locations, inst.k);
  if (inst.domain_length)
    outcome.covering = fit_bounded(outcome.covering, *inst.domain_length);
  outcome.dist = solve_distribution(inst.cost, outcome.covering.length);
  outcome.cost = inst.cost;
  return outcome;
}

std::vector<double> ec_sample(const EcOutcome& outcome, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return outcome.facilities_at(outcome.dist.sample(rng));
}

double ec_agent_expected_cost(const EcOutcome& outcome, double true_location) {
  const auto ts = trajectories(outcome.covering);
  if (outcome.dist.kind() == FacilityDistribution::Kind::discrete) {
    double total = 0.0;
    const auto& support = outcome.dist.support();
    const auto& probs = outcome.dist.probs();
    for (std::size_t j = 0; j < support.size(); ++j)
      total += probs[j] *
               outcome.cost.eval(min_distance(ts, true_location, support[j]));
    return total;
  }

  const auto D = [&](double t) { return min_distance(ts, true_location, t); };
  std::vector<double> breakpoints;
  agent_breakpoints(ts, true_location, outcome.covering.length, &breakpoints);
  return mixture_expected(outcome, D, std::move(breakpoints));
}

double ec_expected_max_cost(const EcOutcome& outcome, const Instance& inst) {
  const auto ts = trajectories(outcome.covering);
  if (outcome.dist.kind() == FacilityDistribution::Kind::discrete) {
    double total = 0.0;
    const auto& support = outcome.dist.support();
    const auto& probs = outcome.dist.probs();
    for (std::size_t j = 0; j < support.size(); ++j) {
      double worst = 0.0;
      for (double y : inst.locations)
        worst = std::max(worst, min_distance(ts, y, support[j]));
      total += probs[j] * outcome.cost.eval(worst);
    }
    return total;
  }

  const auto D = [&](double t) {
    double worst = 0.0;
    for (double y : inst.locations) worst = std::max(worst, min_distance(ts, y, t));
    return worst;
  };
  std::vector<double> breakpoints;
  for (double y : inst.locations)
    agent_breakpoints(ts, y, outcome.covering.length, &breakpoints);
  return mixture_expected(outcome, D, std::move(breakpoints));
}

double ec_expected_social_cost(const EcOutcome& outcome, const Instance& inst) {
  double total = 0.0;
  for (double y : inst.locations) total += ec_agent_expected_cost(outcome, y);
  return total;
}

std::optional<std::vector<double>> radius_variant(const Instance& inst) {
  inst.ensure_valid();
  if (inst.cost.kind() != CostKind::radius)
    throw std::invalid_argument("radius_variant: cost kind must be radius");

  Covering cov = min_cover(inst.locations, inst.k);
  if (inst.domain_length) cov = fit_bounded(cov, *inst.domain_length);
  if (cov.length > 2.0 * inst.cost.radius_value()) return std::nullopt;

  std::vector<double> midpoints;
  midpoints.reserve(cov.starts.size());
  for (double a : cov.starts) midpoints.push_back(a + cov.length / 2.0);
  return midpoints;
}

}  // namespace facloc
