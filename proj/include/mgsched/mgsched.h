/*
 * C interface to the mgsched library: bounded-delay packet scheduling
 * instances, the MG / EDF_alpha / greedy online policies, the offline
 * optimum, instance generators and the competitive-ratio harness.
 *
 * Objects are opaque handles released with their *_destroy function.
 * Every fallible call returns an mgs_status; on failure, mgs_last_error()
 * describes the problem for the calling thread. Strings returned through
 * char** parameters are heap-allocated and released with mgs_string_free.
 */
#ifndef MGSCHED_H
#define MGSCHED_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MGS_BUILDING)
#    define MGS_API __declspec(dllexport)
#  else
#    define MGS_API __declspec(dllimport)
#  endif
#else
#  define MGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mgs_status {
  MGS_OK = 0,
  MGS_ERR_INVALID_ARGUMENT = 1,
  MGS_ERR_INVALID_INSTANCE = 2,
  MGS_ERR_EMPTY = 3,
  MGS_ERR_SIZE_LIMIT = 4,
  MGS_ERR_PREMISE = 5,
  MGS_ERR_DOMAIN = 6,
  MGS_ERR_INFEASIBLE = 7,
  MGS_ERR_IO = 8,
  MGS_ERR_PARSE = 9,
  MGS_ERR_INVARIANT = 10,
  MGS_ERR_OUT_OF_RANGE = 11,
  MGS_ERR_INTERNAL = 12
} mgs_status;

typedef enum mgs_variant {
  MGS_VARIANT_GENERAL = 0,
  MGS_VARIANT_AGREEABLE_DEADLINE = 1,
  MGS_VARIANT_ANTI_AGREEABLE_DEADLINE = 2,
  MGS_VARIANT_AGREEABLE_VALUE = 3,
  MGS_VARIANT_ANTI_AGREEABLE_VALUE = 4,
  MGS_VARIANT_AGREEABLE_DEADLINE_VALUE = 5,
  MGS_VARIANT_ANTI_AGREEABLE_DEADLINE_VALUE = 6,
  MGS_VARIANT_AGREEABLE_SLACK_VALUE = 7,
  MGS_VARIANT_ANTI_AGREEABLE_SLACK_VALUE = 8
} mgs_variant;

#define MGS_VARIANT_COUNT 9

/* Bit (1u << v) of a classification mask is set when the instance
 * satisfies variant v; MGS_VARIANT_GENERAL is always set. */
#define MGS_VARIANT_BIT(v) (1u << (unsigned)(v))

typedef enum mgs_policy_kind {
  MGS_POLICY_MG = 0,
  MGS_POLICY_EDF_ALPHA = 1,
  MGS_POLICY_GREEDY = 2
} mgs_policy_kind;

typedef struct mgs_packet {
  int64_t id;
  int64_t release;
  int64_t deadline;        /* ignored when deadline_bounded == 0 */
  int deadline_bounded;
  double value;
} mgs_packet;

/* alpha = INFINITY selects the unbounded alpha. */
typedef struct mgs_policy {
  mgs_policy_kind kind;
  double alpha;
  double beta;
} mgs_policy;

typedef struct mgs_gen_spec {
  mgs_variant variant;
  size_t n;
  int64_t max_slack;
  double value_lo;
  double value_hi;
  uint64_t seed;
} mgs_gen_spec;

typedef struct mgs_step {
  int64_t t;
  int has_sent;
  int64_t sent_id;
  double sent_value;
  size_t buffer_size;
  double schedule_value;
} mgs_step;

typedef struct mgs_ratio {
  double opt_value;
  double alg_value;
  double ratio;
} mgs_ratio;

typedef struct mgs_chaincheck_result {
  uint64_t trials;
  uint64_t violations;
  uint64_t limit_violations;
  double max_tightness;
} mgs_chaincheck_result;

typedef struct mgs_sweep_cell {
  mgs_variant variant;
  mgs_policy policy;
} mgs_sweep_cell;

typedef struct mgs_sweep_config {
  const mgs_sweep_cell* cells;
  size_t cell_count;
  uint64_t trials;
  uint64_t seed;
  size_t n_min;
  size_t n_max;
  int64_t max_slack;
  double value_lo;
  double value_hi;
  unsigned jobs;
} mgs_sweep_config;

typedef struct mgs_sweep_row {
  mgs_variant variant;
  mgs_policy policy;
  uint64_t trials;
  double max_ratio;
  double mean_ratio;
  uint64_t argmax_seed;
  size_t argmax_n;
  int has_claimed_bound;
  double claimed_bound;
} mgs_sweep_row;

typedef struct mgs_instance mgs_instance;
typedef struct mgs_trace mgs_trace;
typedef struct mgs_sweep_report mgs_sweep_report;

/* Errors and strings */
MGS_API const char* mgs_status_string(mgs_status status);
MGS_API const char* mgs_last_error(void);
MGS_API void mgs_string_free(char* s);

MGS_API const char* mgs_variant_name(mgs_variant variant);
MGS_API mgs_status mgs_variant_from_name(const char* name, mgs_variant* out);

/* Instances */
MGS_API mgs_status mgs_instance_create(mgs_instance** out);
MGS_API void mgs_instance_destroy(mgs_instance* inst);
MGS_API mgs_status mgs_instance_add_packet(mgs_instance* inst, const mgs_packet* packet);
MGS_API mgs_status mgs_instance_size(const mgs_instance* inst, size_t* out);
MGS_API mgs_status mgs_instance_packet(const mgs_instance* inst, size_t index, mgs_packet* out);
MGS_API mgs_status mgs_instance_load(const char* path, mgs_instance** out);
MGS_API mgs_status mgs_instance_save(const mgs_instance* inst, const char* path);
MGS_API mgs_status mgs_instance_parse(const char* jsonl, mgs_instance** out);
MGS_API mgs_status mgs_instance_serialize(const mgs_instance* inst, char** out);
/* "null" when the instance carries no metadata. */
MGS_API mgs_status mgs_instance_meta_json(const mgs_instance* inst, char** out);
/* Violations are data: MGS_OK with *count == 0 means valid. `report`
 * may be NULL; otherwise it receives one message per line. */
MGS_API mgs_status mgs_instance_validate(const mgs_instance* inst, size_t* count, char** report);
MGS_API mgs_status mgs_instance_classify(const mgs_instance* inst, uint32_t* mask);
MGS_API mgs_status mgs_instance_horizon(const mgs_instance* inst, int64_t* out);

/* Generators */
MGS_API void mgs_gen_spec_default(mgs_gen_spec* out);
MGS_API mgs_status mgs_generate(const mgs_gen_spec* spec, mgs_instance** out);
MGS_API mgs_status mgs_generate_lower_bound(int k, double epsilon, mgs_instance** out);
MGS_API mgs_status mgs_lb_ratio_formula(int k, double* out);

/* Online policies */
MGS_API mgs_status mgs_policy_validate(const mgs_policy* policy);
MGS_API mgs_status mgs_simulate(const mgs_instance* inst, const mgs_policy* policy, mgs_trace** out);
MGS_API void mgs_trace_destroy(mgs_trace* trace);
MGS_API mgs_status mgs_trace_total_value(const mgs_trace* trace, double* out);
MGS_API mgs_status mgs_trace_step_count(const mgs_trace* trace, size_t* out);
MGS_API mgs_status mgs_trace_step(const mgs_trace* trace, size_t index, mgs_step* out);
MGS_API mgs_status mgs_trace_sent_count(const mgs_trace* trace, size_t* out);
MGS_API mgs_status mgs_trace_dropped_count(const mgs_trace* trace, size_t* out);
MGS_API mgs_status mgs_trace_serialize(const mgs_trace* trace, char** out);

/* Offline optimum and ratios. `schedule_jsonl` may be NULL. */
MGS_API mgs_status mgs_offline_optimal(const mgs_instance* inst, double* value, char** schedule_jsonl);
MGS_API mgs_status mgs_empirical_ratio(const mgs_instance* inst, const mgs_policy* policy, mgs_ratio* out);
MGS_API mgs_status mgs_ratio_csv_header(char** out);
MGS_API mgs_status mgs_ratio_csv_row(const char* instance_id, const char* variant,
                                     const mgs_policy* policy, const mgs_ratio* ratio, char** out);

/* Analysis */
MGS_API mgs_status mgs_chain_bound(double alpha, int k, double* out);
MGS_API mgs_status mgs_chaincheck(double alpha, int k_max, uint64_t trials, uint64_t seed,
                                  mgs_chaincheck_result* out);
MGS_API mgs_status mgs_table_policy(mgs_variant variant, mgs_policy* out);
/* Defaults with no cells. */
MGS_API void mgs_sweep_config_default(mgs_sweep_config* out);
MGS_API mgs_status mgs_sweep(const mgs_sweep_config* config, mgs_sweep_report** out);
MGS_API void mgs_sweep_report_destroy(mgs_sweep_report* report);
MGS_API mgs_status mgs_sweep_report_row_count(const mgs_sweep_report* report, size_t* out);
MGS_API mgs_status mgs_sweep_report_row(const mgs_sweep_report* report, size_t index, mgs_sweep_row* out);
MGS_API mgs_status mgs_sweep_report_csv(const mgs_sweep_report* report, char** out);
MGS_API mgs_status mgs_sweep_report_table(const mgs_sweep_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MGSCHED_H */
