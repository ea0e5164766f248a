#include "facloc/verify.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "facloc/covering.hpp"
#include "facloc/distribution.hpp"
#include "facloc/equal_cost.hpp"
#include "facloc/oracles.hpp"
#include "facloc/pick_the_loser.hpp"
#include "facloc/rng.hpp"

namespace facloc {

namespace {

using nlohmann::json;

json finding_to_json(const DeviationFinding& finding, const Instance& inst) {
  json j;
  j["instance"] = json::parse(instance_to_json(inst));
  j["agents"] = finding.agents;
  j["misreports"] = finding.misreports;
  j["truthful_costs"] = finding.truthful_costs;
  j["deviated_costs"] = finding.deviated_costs;
  j["gain"] = finding.gain;
  return j;
}

VerifyReport verify_equal_cost(Mechanism, std::uint64_t trials,
                               std::uint64_t seed, double tol) {
  VerifyReport report;
  json worst_detail;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_stream(seed, t));
    const CostFunction cost = random_concave_cost(rng);
    const double length = rng.uniform(0.05, 25.0);
    const double deviation =
        check_equal_cost(cost, length, 100, derive_stream(seed, t ^ 0x5EEDULL));
    if (deviation > report.worst) {
      report.worst = deviation;
      worst_detail = {{"cost", json::parse(cost_to_json(cost))},
                      {"length", length},
                      {"max_deviation", deviation}};
    }
  }
  report.passed = report.worst <= tol;
  report.detail_json = worst_detail.dump();
  return report;
}

VerifyReport verify_sp(Mechanism mech, std::uint64_t trials,
                       std::uint64_t seed, double tol) {
  VerifyReport report;
  GridSpec grid;
  grid.tolerance = tol;
  GenOptions options;
  options.ptl = mech == Mechanism::pick_the_loser;
  if (options.ptl) options.max_agents = 6;

  json worst_detail;
  bool have = false;
  double worst_gain = -1.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_stream(seed, t));
    const Instance inst = random_instance(rng, options);
    const DeviationFinding finding = deviation_search(mech, inst, grid);
    if (!have || finding.gain > worst_gain) {
      have = true;
      worst_gain = finding.gain;
      worst_detail = finding_to_json(finding, inst);
    }
  }
  report.worst = worst_gain;
  report.passed = worst_gain <= tol;
  report.detail_json = worst_detail.dump();
  return report;
}

VerifyReport verify_gsp(Mechanism mech, std::uint64_t trials,
                        std::uint64_t seed, double tol) {
  VerifyReport report;
  GridSpec grid;
  grid.points = 50;
  grid.tolerance = tol;
  GenOptions options;
  options.min_agents = 4;
  options.max_agents = 4;
  options.ptl = mech == Mechanism::pick_the_loser;
  options.max_k = 2;  // ec coalition instances use n=4, k<=2

  json worst_detail;
  bool have = false;
  double worst_gain = -1.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_stream(seed, t));
    const Instance inst = random_instance(rng, options);
    const DeviationFinding finding = coalition_search(mech, inst, 2, grid);
    if (!have || finding.gain > worst_gain) {
      have = true;
      worst_gain = finding.gain;
      worst_detail = finding_to_json(finding, inst);
    }
  }
  report.worst = worst_gain;
  report.passed = worst_gain <= tol;
  report.detail_json = worst_detail.dump();
  return report;
}

VerifyReport verify_ratio(Mechanism mech, std::uint64_t trials,
                          std::uint64_t seed, double tol) {
  VerifyReport report;
  GenOptions options;
  options.max_agents = 10;
  options.max_k = 5;
  options.ptl = mech == Mechanism::pick_the_loser;
  if (options.ptl) options.max_agents = 6;

  // Worst margin above the proven bounds; any positive margin fails.
  double worst_margin = -std::numeric_limits<double>::infinity();
  json worst_detail;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_stream(seed, t));
    const Instance inst = random_instance(rng, options);
    const auto check = [&](const char* name, double value, double bound) {
      const double margin = value - bound;
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_detail = {{"bound", name},
                        {"value", value},
                        {"limit", bound},
                        {"margin", margin},
                        {"instance", json::parse(instance_to_json(inst))}};
      }
    };

    if (mech == Mechanism::equal_cost) {
      const EcOutcome out = ec_run(inst);
      const double mc_opt = opt_max_cost(inst);
      const double sc_opt = opt_social_cost(inst);
      check("max_cost <= 2 * opt",
            ec_expected_max_cost(out, inst), 2.0 * mc_opt);
      for (double x : inst.locations)
        check("agent_cost <= opt_max_cost", ec_agent_expected_cost(out, x),
              mc_opt);
      check("social_cost <= n * opt", ec_expected_social_cost(out, inst),
            static_cast<double>(inst.locations.size()) * sc_opt);
    } else {
      const double value = ptl_expected_social_cost(inst);
      check("social_cost <= 2 * opt", value, 2.0 * opt_social_cost(inst));
      check("max_cost <= 4 * opt", value, 4.0 * opt_max_cost(inst));
    }
  }
  report.worst = worst_margin;
  report.passed = worst_margin <= tol;
  report.detail_json = worst_detail.dump();
  return report;
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite,
                              const std::string& mechanism,
                              std::uint64_t trials, std::uint64_t seed,
                              double tolerance) {
  Mechanism mech;
  if (mechanism == "ec")
    mech = Mechanism::equal_cost;
  else if (mechanism == "ptl")
    mech = Mechanism::pick_the_loser;
  else
    throw std::invalid_argument("verify: unknown mechanism '" + mechanism +
                                "'");

  VerifyReport report;
  if (suite == "equal-cost")
    report = verify_equal_cost(mech, trials, seed, tolerance);
  else if (suite == "sp")
    report = verify_sp(mech, trials, seed, tolerance);
  else if (suite == "gsp")
    report = verify_gsp(mech, trials, seed, tolerance);
  else if (suite == "ratio")
    report = verify_ratio(mech, trials, seed, tolerance);
  else
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");

  report.suite = suite;
  report.mechanism = mechanism;
  report.trials = trials;
  report.seed = seed;
  report.tolerance = tolerance;
  return report;
}

}  // namespace facloc
