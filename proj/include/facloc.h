/* C API of the facloc shared library.
 *
 * All functions return FLC_OK (0) on success or a nonzero error code;
 * flc_last_error() describes the most recent failure on the calling
 * thread. Objects are returned through opaque handles that must be
 * released with the matching *_free function. Array getters follow a
 * two-call pattern: query the size, then fill a caller-owned buffer.
 */
#ifndef FACLOC_H
#define FACLOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  FLC_OK = 0,
  FLC_ERR_INVALID_ARGUMENT = 1, /* domain/validation failure */
  FLC_ERR_PARSE = 2,            /* malformed input text */
  FLC_ERR_BUFFER_TOO_SMALL = 3
};

/* Message for the last error on this thread; empty string if none. */
const char* flc_last_error(void);

/* ---------- cost functions ---------- */

typedef struct flc_cost flc_cost;

/* descriptor: {"kind":"linear","slope":b} |
 * {"kind":"piecewise_linear","slopes":[...],"piece_width":w} |
 * {"kind":"exponential","lambda":l} | {"kind":"radius","r":r} */
int flc_cost_from_json(const char* json_text, flc_cost** out);
int flc_cost_eval(const flc_cost* cost, double distance, double* out);
void flc_cost_free(flc_cost* cost);

/* ---------- instances ---------- */

typedef struct flc_instance flc_instance;

enum {
  FLC_COST_LINEAR = 0,
  FLC_COST_PIECEWISE_LINEAR = 1,
  FLC_COST_EXPONENTIAL = 2,
  FLC_COST_RADIUS = 3
};

int flc_instance_from_json(const char* json_text, flc_instance** out);
int flc_instance_num_agents(const flc_instance* inst, size_t* out);
int flc_instance_cost_kind(const flc_instance* inst, int* out);
int flc_instance_k(const flc_instance* inst, int* out);
int flc_instance_locations(const flc_instance* inst, double* buffer,
                           size_t capacity);
int flc_instance_cost_eval(const flc_instance* inst, double distance,
                           double* out);
void flc_instance_free(flc_instance* inst);

/* ---------- facility distributions ---------- */

typedef struct flc_distribution flc_distribution;

enum { FLC_DIST_DISCRETE = 0, FLC_DIST_EXPONENTIAL_MIXTURE = 1 };

int flc_distribution_solve(const flc_cost* cost, double length,
                           flc_distribution** out);
int flc_distribution_kind(const flc_distribution* dist, int* out);
int flc_distribution_equal_cost(const flc_distribution* dist, double* out);
int flc_distribution_support_size(const flc_distribution* dist, size_t* out);
int flc_distribution_support(const flc_distribution* dist, double* support,
                             double* probs, size_t capacity);
/* exponential mixture parameters: length, lambda, endpoint mass,
 * uniform mass */
int flc_distribution_mixture(const flc_distribution* dist, double* length,
                             double* lambda, double* endpoint_prob,
                             double* uniform_prob);
int flc_distribution_expected_cost_at(const flc_distribution* dist,
                                      const flc_cost* cost, double x,
                                      double* out);
void flc_distribution_free(flc_distribution* dist);

/* ---------- Equal Cost mechanism ---------- */

typedef struct flc_ec_outcome flc_ec_outcome;

int flc_ec_run(const flc_instance* inst, flc_ec_outcome** out);
int flc_ec_covering(const flc_ec_outcome* outcome, double* length,
                    double* starts, size_t capacity, size_t* count);
/* Borrowed view of the placement distribution; do not free. */
int flc_ec_distribution(const flc_ec_outcome* outcome,
                        const flc_distribution** out);
int flc_ec_sample(const flc_ec_outcome* outcome, uint64_t seed,
                  double* facilities, size_t capacity, size_t* count);
int flc_ec_agent_expected_cost(const flc_ec_outcome* outcome, double location,
                               double* out);
int flc_ec_expected_max_cost(const flc_ec_outcome* outcome, double* out);
int flc_ec_expected_social_cost(const flc_ec_outcome* outcome, double* out);
void flc_ec_outcome_free(flc_ec_outcome* outcome);

/* Radius-cost variant. placed = 0 means no facilities (count is 0). */
int flc_ec_radius_run(const flc_instance* inst, int* placed,
                      double* facilities, size_t capacity, size_t* count);

/* ---------- Pick the Loser mechanism ---------- */

typedef struct flc_ptl_report flc_ptl_report;

int flc_ptl_probabilities(const flc_instance* inst, flc_ptl_report** out);
int flc_ptl_all_served(const flc_ptl_report* report, int* out);
/* Arrays aligned with the instance's location order; kappa and q are 0 for
 * odd-ranked agents. */
int flc_ptl_kappa(const flc_ptl_report* report, double* buffer,
                  size_t capacity);
int flc_ptl_loser_probs(const flc_ptl_report* report, double* buffer,
                        size_t capacity);
int flc_ptl_expected_social_cost(const flc_ptl_report* report, double* out);
void flc_ptl_report_free(flc_ptl_report* report);

/* loser is -1 when duplicates make every distinct location served. */
int flc_ptl_sample(const flc_instance* inst, uint64_t seed, int* loser,
                   double* facilities, size_t capacity, size_t* count);

/* ---------- oracles ---------- */

int flc_opt_social_cost(const flc_instance* inst, double* out);
int flc_opt_max_cost(const flc_instance* inst, double* out);

/* ---------- verification suites ---------- */

typedef struct flc_verify_report flc_verify_report;

/* suite: "equal-cost" | "sp" | "gsp" | "ratio"; mechanism: "ec" | "ptl" */
int flc_verify_run(const char* suite, const char* mechanism, uint64_t trials,
                   uint64_t seed, double tolerance, flc_verify_report** out);
int flc_verify_passed(const flc_verify_report* report, int* out);
int flc_verify_worst(const flc_verify_report* report, double* out);
/* Owned by the report; valid until flc_verify_report_free. */
const char* flc_verify_detail_json(const flc_verify_report* report);
void flc_verify_report_free(flc_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FACLOC_H */
