#ifndef SORKIN_SORKIN_H
#define SORKIN_SORKIN_H

/* C interface to the sorkin library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a sorkin_status; on failure a thread-local message is
 * available from sorkin_last_error_message() until the next call on the same
 * thread. Strings returned through `char**` out-parameters are heap-allocated
 * and must be released with sorkin_free_string(). */

#include <stddef.h>
#include <stdint.h>

#if defined(SORKIN_BUILDING_LIBRARY)
#define SORKIN_API __attribute__((visibility("default")))
#else
#define SORKIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sorkin_status {
  SORKIN_OK = 0,
  SORKIN_INVALID_ARGUMENT = 1,
  SORKIN_CONTRACT_VIOLATION = 2,
  SORKIN_ORTHOGONALITY = 3,
  SORKIN_CONDITIONING = 4,
  SORKIN_DIMENSION_MISMATCH = 5,
  SORKIN_NUMERIC = 6,
  SORKIN_SAMPLER = 7,
  SORKIN_CONFIG = 8,
  SORKIN_IO = 9,
  SORKIN_INTERNAL = 100
} sorkin_status;

typedef enum sorkin_verdict {
  SORKIN_NO_INTERFERENCE = 0,
  SORKIN_SECOND_ORDER_ONLY = 1,
  SORKIN_THIRD_ORDER = 2,
  SORKIN_INCONCLUSIVE = 3
} sorkin_verdict;

typedef struct sorkin_campaign_config sorkin_campaign_config;
typedef struct sorkin_campaign_report sorkin_campaign_report;
typedef struct sorkin_slits_config sorkin_slits_config;
typedef struct sorkin_slits_result sorkin_slits_result;
typedef struct sorkin_verify_result sorkin_verify_result;

SORKIN_API const char* sorkin_version(void);
SORKIN_API const char* sorkin_last_error_message(void);
SORKIN_API void sorkin_free_string(char* s);
SORKIN_API const char* sorkin_verdict_name(sorkin_verdict v);

/* Campaigns. Defaults: classical, 1000 trials, seed 0, dimension 3,
 * 6 outcomes, thresholds 1e-8 / 1e-2, hardware concurrency. */
SORKIN_API sorkin_status sorkin_campaign_config_create(sorkin_campaign_config** out);
SORKIN_API void sorkin_campaign_config_destroy(sorkin_campaign_config* config);
/* "classical", "quantum", "albert" or "synthetic". */
SORKIN_API sorkin_status sorkin_campaign_config_set_theory(sorkin_campaign_config* config,
                                                           const char* theory);
SORKIN_API sorkin_status sorkin_campaign_config_set_trials(sorkin_campaign_config* config,
                                                           uint64_t trials);
SORKIN_API sorkin_status sorkin_campaign_config_set_seed(sorkin_campaign_config* config,
                                                         uint64_t seed);
SORKIN_API sorkin_status sorkin_campaign_config_set_dimension(sorkin_campaign_config* config,
                                                              int dimension);
SORKIN_API sorkin_status sorkin_campaign_config_set_outcomes(sorkin_campaign_config* config,
                                                             int outcomes);
SORKIN_API sorkin_status sorkin_campaign_config_set_rank_one(sorkin_campaign_config* config,
                                                             int rank_one);
SORKIN_API sorkin_status sorkin_campaign_config_set_thresholds(sorkin_campaign_config* config,
                                                               double zero, double significance);
/* 0 means hardware concurrency. */
SORKIN_API sorkin_status sorkin_campaign_config_set_threads(sorkin_campaign_config* config,
                                                            unsigned threads);

SORKIN_API sorkin_status sorkin_campaign_run(const sorkin_campaign_config* config,
                                             sorkin_campaign_report** out);
SORKIN_API void sorkin_campaign_report_destroy(sorkin_campaign_report* report);
SORKIN_API sorkin_verdict sorkin_campaign_report_verdict(const sorkin_campaign_report* report);
SORKIN_API sorkin_verdict sorkin_campaign_report_expected(const sorkin_campaign_report* report);
SORKIN_API int sorkin_campaign_report_matches(const sorkin_campaign_report* report);
SORKIN_API double sorkin_campaign_report_max_abs_i2(const sorkin_campaign_report* report);
SORKIN_API double sorkin_campaign_report_max_abs_i3(const sorkin_campaign_report* report);
SORKIN_API double sorkin_campaign_report_max_identity_residual(
    const sorkin_campaign_report* report);
SORKIN_API double sorkin_campaign_report_fraction_i2_significant(
    const sorkin_campaign_report* report);
/* Pretty-printed JSON with sorted keys; the manifest block holds timestamps. */
SORKIN_API sorkin_status sorkin_campaign_report_json(const sorkin_campaign_report* report,
                                                     int include_manifest, char** out);

/* Slit simulator. */
SORKIN_API sorkin_status sorkin_slits_config_default(sorkin_slits_config** out);
SORKIN_API sorkin_status sorkin_slits_config_parse(const char* text, sorkin_slits_config** out);
SORKIN_API sorkin_status sorkin_slits_config_load(const char* path, sorkin_slits_config** out);
SORKIN_API void sorkin_slits_config_destroy(sorkin_slits_config* config);

SORKIN_API sorkin_status sorkin_slits_run(const sorkin_slits_config* config,
                                          sorkin_slits_result** out);
SORKIN_API void sorkin_slits_result_destroy(sorkin_slits_result* result);
SORKIN_API double sorkin_slits_result_max_relative_residual(const sorkin_slits_result* result);
SORKIN_API size_t sorkin_slits_result_detector_count(const sorkin_slits_result* result);
SORKIN_API sorkin_status sorkin_slits_result_csv(const sorkin_slits_result* result, char** out);
SORKIN_API sorkin_status sorkin_slits_result_write_csv(const sorkin_slits_result* result,
                                                       const char* path);

/* Verification suites. `only` is a comma-separated list of suite names or
 * NULL for all. `mutate_i`, `mutate_j` in [0, 8) flip the sign of one entry of
 * the octonion table used by the octonion suite; pass -1 to leave it intact. */
SORKIN_API sorkin_status sorkin_verify_run(const char* only, int mutate_i, int mutate_j,
                                           unsigned threads, sorkin_verify_result** out);
SORKIN_API void sorkin_verify_result_destroy(sorkin_verify_result* result);
SORKIN_API int sorkin_verify_result_all_passed(const sorkin_verify_result* result);
SORKIN_API size_t sorkin_verify_result_suite_count(const sorkin_verify_result* result);
SORKIN_API sorkin_status sorkin_verify_result_summary(const sorkin_verify_result* result,
                                                      char** out);
/* Comma-separated suite names. */
SORKIN_API const char* sorkin_verify_suite_names(void);

/* Octonions. */
SORKIN_API sorkin_status sorkin_octonion_table_csv(char** out);
SORKIN_API void sorkin_octonion_mul(const double x[8], const double y[8], double out[8]);

#ifdef __cplusplus
}
#endif

#endif
