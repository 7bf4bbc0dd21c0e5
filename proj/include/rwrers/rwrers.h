/* C interface to the rwrers simulator.
 *
 * Handles are opaque. Every function returns an rwrers_status; on failure
 * rwrers_last_error() describes the problem (per thread). Strings returned
 * through out-parameters are owned by the caller and released with
 * rwrers_string_free().
 */
#ifndef RWRERS_RWRERS_H
#define RWRERS_RWRERS_H

#include <stddef.h>

#if defined(RWRERS_BUILDING_LIBRARY)
#define RWRERS_API __attribute__((visibility("default")))
#else
#define RWRERS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwrers_status {
  RWRERS_OK = 0,
  RWRERS_ERR_INVALID_ARGUMENT = -1,
  RWRERS_ERR_CONFIG = -2,
  RWRERS_ERR_CONVERGENCE = -3,
  RWRERS_ERR_RESOURCE = -4,
  RWRERS_ERR_DEGENERATE_WEIGHTS = -5,
  RWRERS_ERR_INVALID_HANDLE = -6,
  RWRERS_ERR_INTERNAL = -7
} rwrers_status;

typedef struct rwrers_config rwrers_config;
typedef struct rwrers_report rwrers_report;

RWRERS_API const char* rwrers_version(void);
RWRERS_API const char* rwrers_last_error(void);
RWRERS_API void rwrers_string_free(char* s);

/* Parses a JSON config object (or a run manifest) and fills defaults. */
RWRERS_API rwrers_status rwrers_config_load(const char* json, rwrers_config** out);
/* 1 when the seed was missing and a fresh one was drawn. */
RWRERS_API rwrers_status rwrers_config_seed_generated(const rwrers_config* config, int* out);
RWRERS_API rwrers_status rwrers_config_seed(const rwrers_config* config, unsigned long long* out);
/* Fully resolved configuration as a JSON object. */
RWRERS_API rwrers_status rwrers_config_to_json(const rwrers_config* config, char** out);
RWRERS_API void rwrers_config_free(rwrers_config* config);

/* subcommand: stationarity, counterexample, kernel-check, mtp-check or alili-demo. */
RWRERS_API rwrers_status rwrers_run(const rwrers_config* config, const char* subcommand, rwrers_report** out);

/* 1 when every property expected to hold did. */
RWRERS_API rwrers_status rwrers_report_passed(const rwrers_report* report, int* out);
RWRERS_API rwrers_status rwrers_report_record_count(const rwrers_report* report, size_t* out);
RWRERS_API rwrers_status rwrers_report_jsonl(const rwrers_report* report, char** out);
RWRERS_API rwrers_status rwrers_report_csv(const rwrers_report* report, char** out);
RWRERS_API rwrers_status rwrers_report_summary(const rwrers_report* report, char** out);
RWRERS_API void rwrers_report_free(rwrers_report* report);

#ifdef __cplusplus
}
#endif

#endif
