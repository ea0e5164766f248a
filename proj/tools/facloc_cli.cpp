// Command line front end. Talks to the core exclusively through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "facloc.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct CliError {
  std::string message;
};

void check(int rc) {
  if (rc != FLC_OK) throw CliError{flc_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

using InstancePtr = std::unique_ptr<flc_instance, decltype(&flc_instance_free)>;

InstancePtr load_instance(const std::string& path) {
  flc_instance* raw = nullptr;
  check(flc_instance_from_json(read_file(path).c_str(), &raw));
  return InstancePtr(raw, &flc_instance_free);
}

std::vector<double> instance_locations(const flc_instance* inst) {
  size_t n = 0;
  check(flc_instance_num_agents(inst, &n));
  std::vector<double> xs(n);
  check(flc_instance_locations(inst, xs.data(), xs.size()));
  return xs;
}

// Realized connection costs of the agents for fixed facility locations.
std::vector<double> realized_costs(const flc_instance* inst,
                                   const std::vector<double>& facilities) {
  const auto xs = instance_locations(inst);
  std::vector<double> costs;
  costs.reserve(xs.size());
  for (double x : xs) {
    double cost = 1.0;  // no facilities: radius-variant convention
    if (!facilities.empty()) {
      double best = std::abs(x - facilities[0]);
      for (double f : facilities) best = std::min(best, std::abs(x - f));
      check(flc_instance_cost_eval(inst, best, &cost));
    }
    costs.push_back(cost);
  }
  return costs;
}

json distribution_json(const flc_distribution* dist) {
  json j;
  int kind = 0;
  check(flc_distribution_kind(dist, &kind));
  double equal_cost = 0.0;
  check(flc_distribution_equal_cost(dist, &equal_cost));
  if (kind == FLC_DIST_DISCRETE) {
    size_t size = 0;
    check(flc_distribution_support_size(dist, &size));
    std::vector<double> support(size), probs(size);
    check(flc_distribution_support(dist, support.data(), probs.data(), size));
    j["kind"] = "discrete";
    j["support"] = support;
    j["probs"] = probs;
  } else {
    double length = 0, lambda = 0, endpoint = 0, uniform = 0;
    check(flc_distribution_mixture(dist, &length, &lambda, &endpoint,
                                   &uniform));
    j["kind"] = "exponential_mixture";
    j["length"] = length;
    j["lambda"] = lambda;
    j["prob_zero"] = endpoint;
    j["prob_length"] = endpoint;
    j["prob_uniform"] = uniform;
  }
  j["equal_cost"] = equal_cost;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool is_radius_instance(const flc_instance* inst) {
  int kind = 0;
  check(flc_instance_cost_kind(inst, &kind));
  return kind == FLC_COST_RADIUS;
}

// Radius variant outcome, shared by `ec run` and `ec expected` (it is
// deterministic).
json radius_outcome(const flc_instance* inst) {
  size_t n = 0;
  check(flc_instance_num_agents(inst, &n));
  int placed = 0;
  std::vector<double> facilities(n);
  size_t count = 0;
  check(flc_ec_radius_run(inst, &placed, facilities.data(), facilities.size(),
                          &count));
  facilities.resize(placed ? count : 0);

  json j;
  j["variant"] = "radius";
  j["facilities"] = placed ? json(facilities) : json(nullptr);
  j["agent_costs"] = realized_costs(inst, facilities);
  return j;
}

int cmd_ec_run(const std::string& path, std::uint64_t seed) {
  const auto inst = load_instance(path);
  if (is_radius_instance(inst.get())) {
    json j = radius_outcome(inst.get());
    j["seed"] = seed;
    emit(j);
    return kExitPass;
  }

  flc_ec_outcome* raw = nullptr;
  check(flc_ec_run(inst.get(), &raw));
  std::unique_ptr<flc_ec_outcome, decltype(&flc_ec_outcome_free)> outcome(
      raw, &flc_ec_outcome_free);

  size_t count = 0;
  check(flc_ec_sample(outcome.get(), seed, nullptr, 0, &count));
  std::vector<double> facilities(count);
  check(flc_ec_sample(outcome.get(), seed, facilities.data(), count, &count));

  json j;
  j["seed"] = seed;
  j["facilities"] = facilities;
  j["agent_costs"] = realized_costs(inst.get(), facilities);
  emit(j);
  return kExitPass;
}

int cmd_ec_expected(const std::string& path) {
  const auto inst = load_instance(path);
  if (is_radius_instance(inst.get())) {
    emit(radius_outcome(inst.get()));
    return kExitPass;
  }

  flc_ec_outcome* raw = nullptr;
  check(flc_ec_run(inst.get(), &raw));
  std::unique_ptr<flc_ec_outcome, decltype(&flc_ec_outcome_free)> outcome(
      raw, &flc_ec_outcome_free);

  double length = 0;
  size_t interval_count = 0;
  check(flc_ec_covering(outcome.get(), &length, nullptr, 0, &interval_count));
  std::vector<double> starts(interval_count);
  check(flc_ec_covering(outcome.get(), &length, starts.data(), starts.size(),
                        &interval_count));

  const flc_distribution* dist = nullptr;
  check(flc_ec_distribution(outcome.get(), &dist));

  const auto xs = instance_locations(inst.get());
  std::vector<double> agent_costs;
  for (double x : xs) {
    double c = 0;
    check(flc_ec_agent_expected_cost(outcome.get(), x, &c));
    agent_costs.push_back(c);
  }
  double max_cost = 0, social_cost = 0, equal_cost = 0;
  check(flc_ec_expected_max_cost(outcome.get(), &max_cost));
  check(flc_ec_expected_social_cost(outcome.get(), &social_cost));
  check(flc_distribution_equal_cost(dist, &equal_cost));

  json j;
  j["covering"] = {{"length", length}, {"starts", starts}};
  j["distribution"] = distribution_json(dist);
  j["equal_cost"] = equal_cost;
  j["agent_expected_costs"] = agent_costs;
  j["expected_max_cost"] = max_cost;
  j["expected_social_cost"] = social_cost;
  emit(j);
  return kExitPass;
}

int cmd_ptl_probs(const std::string& path) {
  const auto inst = load_instance(path);
  size_t n = 0;
  check(flc_instance_num_agents(inst.get(), &n));

  flc_ptl_report* raw = nullptr;
  check(flc_ptl_probabilities(inst.get(), &raw));
  std::unique_ptr<flc_ptl_report, decltype(&flc_ptl_report_free)> report(
      raw, &flc_ptl_report_free);

  int all_served = 0;
  check(flc_ptl_all_served(report.get(), &all_served));
  std::vector<double> kappa(n), q(n);
  check(flc_ptl_kappa(report.get(), kappa.data(), n));
  check(flc_ptl_loser_probs(report.get(), q.data(), n));
  double social = 0;
  check(flc_ptl_expected_social_cost(report.get(), &social));

  json j;
  j["all_served"] = all_served != 0;
  j["kappa"] = kappa;
  j["q"] = q;
  j["expected_social_cost"] = social;
  emit(j);
  return kExitPass;
}

int cmd_ptl_sample(const std::string& path, std::uint64_t seed) {
  const auto inst = load_instance(path);
  size_t n = 0;
  check(flc_instance_num_agents(inst.get(), &n));

  int loser = -1;
  std::vector<double> facilities(n);
  size_t count = 0;
  check(flc_ptl_sample(inst.get(), seed, &loser, facilities.data(),
                       facilities.size(), &count));
  facilities.resize(count);

  json j;
  j["seed"] = seed;
  j["loser"] = loser >= 0 ? json(loser) : json(nullptr);
  j["facilities"] = facilities;
  emit(j);
  return kExitPass;
}

int cmd_dist_solve(double length, const std::string& cost_text) {
  flc_cost* raw_cost = nullptr;
  check(flc_cost_from_json(cost_text.c_str(), &raw_cost));
  std::unique_ptr<flc_cost, decltype(&flc_cost_free)> cost(raw_cost,
                                                           &flc_cost_free);

  flc_distribution* raw_dist = nullptr;
  check(flc_distribution_solve(cost.get(), length, &raw_dist));
  std::unique_ptr<flc_distribution, decltype(&flc_distribution_free)> dist(
      raw_dist, &flc_distribution_free);

  json j = distribution_json(dist.get());
  j["length"] = length;
  emit(j);
  return kExitPass;
}

int cmd_verify(const std::string& suite, const std::string& mech,
               std::uint64_t trials, std::uint64_t seed, double tol) {
  flc_verify_report* raw = nullptr;
  check(flc_verify_run(suite.c_str(), mech.c_str(), trials, seed, tol, &raw));
  std::unique_ptr<flc_verify_report, decltype(&flc_verify_report_free)> report(
      raw, &flc_verify_report_free);

  int passed = 0;
  double worst = 0;
  check(flc_verify_passed(report.get(), &passed));
  check(flc_verify_worst(report.get(), &worst));

  json j;
  j["suite"] = suite;
  j["mechanism"] = mech;
  j["trials"] = trials;
  j["seed"] = seed;
  j["tolerance"] = tol;
  j["passed"] = passed != 0;
  j["worst"] = worst;
  j["detail"] = json::parse(flc_verify_detail_json(report.get()));
  emit(j);
  return passed != 0 ? kExitPass : kExitVerifyFail;
}

int cmd_oracle(const std::string& objective, const std::string& path) {
  const auto inst = load_instance(path);
  double value = 0;
  if (objective == "social")
    check(flc_opt_social_cost(inst.get(), &value));
  else
    check(flc_opt_max_cost(inst.get(), &value));

  json j;
  j["objective"] = objective;
  j["value"] = value;
  emit(j);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized strategyproof k-facility location mechanisms"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string cost_text;
  std::string mech = "ec";
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  double tol = 1e-9;
  double length = 0.0;

  auto* ec = app.add_subcommand("ec", "Equal Cost mechanism");
  ec->require_subcommand(1);
  auto* ec_run = ec->add_subcommand("run", "Sample one facility placement");
  ec_run->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  ec_run->add_option("--seed", seed, "RNG seed");
  auto* ec_expected =
      ec->add_subcommand("expected", "Covering, distribution, expected costs");
  ec_expected->add_option("-i,--instance", instance_path, "Instance file")
      ->required();

  auto* ptl = app.add_subcommand("ptl", "Pick the Loser mechanism (n = k+1)");
  ptl->require_subcommand(1);
  auto* ptl_probs =
      ptl->add_subcommand("probs", "Exact loser probabilities and costs");
  ptl_probs->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  auto* ptl_sample = ptl->add_subcommand("sample", "Draw the loser");
  ptl_sample->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  ptl_sample->add_option("--seed", seed, "RNG seed");

  auto* dist = app.add_subcommand("dist", "Facility placement distributions");
  dist->require_subcommand(1);
  auto* dist_solve =
      dist->add_subcommand("solve", "Equalizing distribution on [0, length]");
  dist_solve->add_option("--length", length, "Interval length")->required();
  dist_solve->add_option("--cost", cost_text, "Cost descriptor JSON")
      ->required();

  auto* verify =
      app.add_subcommand("verify", "Property suites over random instances");
  verify->require_subcommand(1);
  std::vector<CLI::App*> verify_suites;
  for (const char* name : {"equal-cost", "sp", "gsp", "ratio"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("--mech", mech, "Mechanism: ec | ptl")
        ->check(CLI::IsMember({"ec", "ptl"}));
    sub->add_option("--trials", trials, "Number of random instances");
    sub->add_option("--seed", seed, "Root seed");
    sub->add_option("--tol", tol, "Violation tolerance");
    verify_suites.push_back(sub);
  }

  auto* oracle = app.add_subcommand("oracle", "Brute-force optima");
  oracle->require_subcommand(1);
  auto* opt_sc = oracle->add_subcommand("opt-sc", "Optimal social cost");
  opt_sc->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  auto* opt_mc = oracle->add_subcommand("opt-mc", "Optimal max cost");
  opt_mc->add_option("-i,--instance", instance_path, "Instance file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (ec_run->parsed()) return cmd_ec_run(instance_path, seed);
    if (ec_expected->parsed()) return cmd_ec_expected(instance_path);
    if (ptl_probs->parsed()) return cmd_ptl_probs(instance_path);
    if (ptl_sample->parsed()) return cmd_ptl_sample(instance_path, seed);
    if (dist_solve->parsed()) return cmd_dist_solve(length, cost_text);
    for (std::size_t i = 0; i < verify_suites.size(); ++i)
      if (verify_suites[i]->parsed())
        return cmd_verify(verify_suites[i]->get_name(), mech, trials, seed,
                          tol);
    if (opt_sc->parsed()) return cmd_oracle("social", instance_path);
    if (opt_mc->parsed()) return cmd_oracle("max", instance_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
