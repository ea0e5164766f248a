#include "facloc.h"

#include <cstring>
#include <stdexcept>
#include <exception>
#include <string>

#include "facloc/equal_cost.hpp"
#include "facloc/instance.hpp"
#include "facloc/oracles.hpp"
#include "facloc/pick_the_loser.hpp"
#include "facloc/verify.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what;
  return code;
}

int fail_invalid(const char* what) {
  return fail(FLC_ERR_INVALID_ARGUMENT, what);
}

// Runs fn, translating exceptions into error codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    const bool parse = std::strstr(e.what(), "malformed JSON") != nullptr;
    return fail(parse ? FLC_ERR_PARSE : FLC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FLC_ERR_INVALID_ARGUMENT, e.what());
  }
}

int fill(const std::vector<double>& values, double* buffer, size_t capacity) {
  if (buffer == nullptr || capacity < values.size())
    return fail(FLC_ERR_BUFFER_TOO_SMALL, "buffer too small");
  for (size_t i = 0; i < values.size(); ++i) buffer[i] = values[i];
  return FLC_OK;
}

}  // namespace

struct flc_cost {
  facloc::CostFunction cost;
};
struct flc_instance {
  facloc::Instance inst;
};
struct flc_distribution {
  facloc::FacilityDistribution dist;
};
struct flc_ec_outcome {
  facloc::EcOutcome outcome;
  facloc::Instance inst;
  flc_distribution dist_view;
};
struct flc_ptl_report {
  facloc::LoserReport report;
};
struct flc_verify_report {
  facloc::VerifyReport report;
};

extern "C" {

const char* flc_last_error(void) { return g_last_error.c_str(); }

/* ---------- cost functions ---------- */

int flc_cost_from_json(const char* json_text, flc_cost** out) {
  if (json_text == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = new flc_cost{facloc::parse_cost(json_text)};
    return FLC_OK;
  });
}

int flc_cost_eval(const flc_cost* cost, double distance, double* out) {
  if (cost == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = cost->cost.eval(distance);
    return FLC_OK;
  });
}

void flc_cost_free(flc_cost* cost) { delete cost; }

/* ---------- instances ---------- */

int flc_instance_from_json(const char* json_text, flc_instance** out) {
  if (json_text == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = new flc_instance{facloc::parse_instance(json_text)};
    return FLC_OK;
  });
}

int flc_instance_num_agents(const flc_instance* inst, size_t* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  *out = inst->inst.locations.size();
  return FLC_OK;
}

int flc_instance_k(const flc_instance* inst, int* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  *out = inst->inst.k;
  return FLC_OK;
}

int flc_instance_cost_kind(const flc_instance* inst, int* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  switch (inst->inst.cost.kind()) {
    case facloc::CostKind::linear: *out = FLC_COST_LINEAR; break;
    case facloc::CostKind::piecewise_linear:
      *out = FLC_COST_PIECEWISE_LINEAR;
      break;
    case facloc::CostKind::exponential: *out = FLC_COST_EXPONENTIAL; break;
    case facloc::CostKind::radius: *out = FLC_COST_RADIUS; break;
  }
  return FLC_OK;
}

int flc_instance_locations(const flc_instance* inst, double* buffer,
                           size_t capacity) {
  if (inst == nullptr) return fail_invalid("null argument");
  return fill(inst->inst.locations, buffer, capacity);
}

int flc_instance_cost_eval(const flc_instance* inst, double distance,
                           double* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = inst->inst.cost.eval(distance);
    return FLC_OK;
  });
}

void flc_instance_free(flc_instance* inst) { delete inst; }

/* ---------- facility distributions ---------- */

int flc_distribution_solve(const flc_cost* cost, double length,
                           flc_distribution** out) {
  if (cost == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = new flc_distribution{facloc::solve_distribution(cost->cost, length)};
    return FLC_OK;
  });
}

int flc_distribution_kind(const flc_distribution* dist, int* out) {
  if (dist == nullptr || out == nullptr) return fail_invalid("null argument");
  *out = dist->dist.kind() == facloc::FacilityDistribution::Kind::discrete
             ? FLC_DIST_DISCRETE
             : FLC_DIST_EXPONENTIAL_MIXTURE;
  return FLC_OK;
}

int flc_distribution_equal_cost(const flc_distribution* dist, double* out) {
  if (dist == nullptr || out == nullptr) return fail_invalid("null argument");
  *out = dist->dist.equal_cost();
  return FLC_OK;
}

int flc_distribution_support_size(const flc_distribution* dist, size_t* out) {
  if (dist == nullptr || out == nullptr) return fail_invalid("null argument");
  if (dist->dist.kind() != facloc::FacilityDistribution::Kind::discrete)
    return fail_invalid("distribution is not discrete");
  *out = dist->dist.support().size();
  return FLC_OK;
}

int flc_distribution_support(const flc_distribution* dist, double* support,
                             double* probs, size_t capacity) {
  if (dist == nullptr) return fail_invalid("null argument");
  if (dist->dist.kind() != facloc::FacilityDistribution::Kind::discrete)
    return fail_invalid("distribution is not discrete");
  if (int rc = fill(dist->dist.support(), support, capacity); rc != FLC_OK)
    return rc;
  return fill(dist->dist.probs(), probs, capacity);
}

int flc_distribution_mixture(const flc_distribution* dist, double* length,
                             double* lambda, double* endpoint_prob,
                             double* uniform_prob) {
  if (dist == nullptr) return fail_invalid("null argument");
  if (dist->dist.kind() !=
      facloc::FacilityDistribution::Kind::exponential_mixture)
    return fail_invalid("distribution is not an exponential mixture");
  if (length != nullptr) *length = dist->dist.length();
  if (lambda != nullptr) *lambda = dist->dist.lambda();
  if (endpoint_prob != nullptr) *endpoint_prob = dist->dist.endpoint_prob();
  if (uniform_prob != nullptr) *uniform_prob = dist->dist.uniform_prob();
  return FLC_OK;
}

int flc_distribution_expected_cost_at(const flc_distribution* dist,
                                      const flc_cost* cost, double x,
                                      double* out) {
  if (dist == nullptr || cost == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::expected_cost_at(dist->dist, cost->cost, x);
    return FLC_OK;
  });
}

void flc_distribution_free(flc_distribution* dist) { delete dist; }

/* ---------- Equal Cost mechanism ---------- */

int flc_ec_run(const flc_instance* inst, flc_ec_outcome** out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    auto outcome = facloc::ec_run(inst->inst);
    auto* handle = new flc_ec_outcome{std::move(outcome), inst->inst, {}};
    handle->dist_view.dist = handle->outcome.dist;
    *out = handle;
    return FLC_OK;
  });
}

int flc_ec_covering(const flc_ec_outcome* outcome, double* length,
                    double* starts, size_t capacity, size_t* count) {
  if (outcome == nullptr) return fail_invalid("null argument");
  const auto& cov = outcome->outcome.covering;
  if (length != nullptr) *length = cov.length;
  if (count != nullptr) *count = cov.starts.size();
  if (starts != nullptr) return fill(cov.starts, starts, capacity);
  return FLC_OK;
}

int flc_ec_distribution(const flc_ec_outcome* outcome,
                        const flc_distribution** out) {
  if (outcome == nullptr || out == nullptr)
    return fail_invalid("null argument");
  *out = &outcome->dist_view;
  return FLC_OK;
}

int flc_ec_sample(const flc_ec_outcome* outcome, uint64_t seed,
                  double* facilities, size_t capacity, size_t* count) {
  if (outcome == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    const auto placed = facloc::ec_sample(outcome->outcome, seed);
    if (count != nullptr) *count = placed.size();
    if (facilities != nullptr) return fill(placed, facilities, capacity);
    return FLC_OK;
  });
}

int flc_ec_agent_expected_cost(const flc_ec_outcome* outcome, double location,
                               double* out) {
  if (outcome == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::ec_agent_expected_cost(outcome->outcome, location);
    return FLC_OK;
  });
}

int flc_ec_expected_max_cost(const flc_ec_outcome* outcome, double* out) {
  if (outcome == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::ec_expected_max_cost(outcome->outcome, outcome->inst);
    return FLC_OK;
  });
}

int flc_ec_expected_social_cost(const flc_ec_outcome* outcome, double* out) {
  if (outcome == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::ec_expected_social_cost(outcome->outcome, outcome->inst);
    return FLC_OK;
  });
}

void flc_ec_outcome_free(flc_ec_outcome* outcome) { delete outcome; }

int flc_ec_radius_run(const flc_instance* inst, int* placed,
                      double* facilities, size_t capacity, size_t* count) {
  if (inst == nullptr || placed == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    const auto result = facloc::radius_variant(inst->inst);
    *placed = result.has_value() ? 1 : 0;
    if (count != nullptr) *count = result ? result->size() : 0;
    if (result && facilities != nullptr)
      return fill(*result, facilities, capacity);
    return FLC_OK;
  });
}

/* ---------- Pick the Loser mechanism ---------- */

int flc_ptl_probabilities(const flc_instance* inst, flc_ptl_report** out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = new flc_ptl_report{facloc::loser_probabilities(inst->inst)};
    return FLC_OK;
  });
}

int flc_ptl_all_served(const flc_ptl_report* report, int* out) {
  if (report == nullptr || out == nullptr)
    return fail_invalid("null argument");
  *out = report->report.all_served ? 1 : 0;
  return FLC_OK;
}

int flc_ptl_kappa(const flc_ptl_report* report, double* buffer,
                  size_t capacity) {
  if (report == nullptr) return fail_invalid("null argument");
  return fill(report->report.kappa, buffer, capacity);
}

int flc_ptl_loser_probs(const flc_ptl_report* report, double* buffer,
                        size_t capacity) {
  if (report == nullptr) return fail_invalid("null argument");
  return fill(report->report.loser_prob, buffer, capacity);
}

int flc_ptl_expected_social_cost(const flc_ptl_report* report, double* out) {
  if (report == nullptr || out == nullptr)
    return fail_invalid("null argument");
  *out = report->report.expected_social_cost;
  return FLC_OK;
}

void flc_ptl_report_free(flc_ptl_report* report) { delete report; }

int flc_ptl_sample(const flc_instance* inst, uint64_t seed, int* loser,
                   double* facilities, size_t capacity, size_t* count) {
  if (inst == nullptr || loser == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    const auto sample = facloc::ptl_sample(inst->inst, seed);
    *loser = sample.loser.value_or(-1);
    if (count != nullptr) *count = sample.facilities.size();
    if (facilities != nullptr)
      return fill(sample.facilities, facilities, capacity);
    return FLC_OK;
  });
}

/* ---------- oracles ---------- */

int flc_opt_social_cost(const flc_instance* inst, double* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::opt_social_cost(inst->inst);
    return FLC_OK;
  });
}

int flc_opt_max_cost(const flc_instance* inst, double* out) {
  if (inst == nullptr || out == nullptr) return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = facloc::opt_max_cost(inst->inst);
    return FLC_OK;
  });
}

/* ---------- verification suites ---------- */

int flc_verify_run(const char* suite, const char* mechanism, uint64_t trials,
                   uint64_t seed, double tolerance, flc_verify_report** out) {
  if (suite == nullptr || mechanism == nullptr || out == nullptr)
    return fail_invalid("null argument");
  return guarded([&]() -> int {
    *out = new flc_verify_report{
        facloc::run_verify_suite(suite, mechanism, trials, seed, tolerance)};
    return FLC_OK;
  });
}

int flc_verify_passed(const flc_verify_report* report, int* out) {
  if (report == nullptr || out == nullptr)
    return fail_invalid("null argument");
  *out = report->report.passed ? 1 : 0;
  return FLC_OK;
}

int flc_verify_worst(const flc_verify_report* report, double* out) {
  if (report == nullptr || out == nullptr)
    return fail_invalid("null argument");
  *out = report->report.worst;
  return FLC_OK;
}

const char* flc_verify_detail_json(const flc_verify_report* report) {
  return report == nullptr ? "" : report->report.detail_json.c_str();
}

void flc_verify_report_free(flc_verify_report* report) { delete report; }

}  // extern "C"
