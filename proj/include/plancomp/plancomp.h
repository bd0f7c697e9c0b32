#ifndef PLANCOMP_PLANCOMP_H
#define PLANCOMP_PLANCOMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PLANCOMP_BUILDING)
#    define PLANCOMP_API __declspec(dllexport)
#  else
#    define PLANCOMP_API __declspec(dllimport)
#  endif
#else
#  define PLANCOMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_NULL_ARGUMENT = 1,
  PC_ERR_INTERNAL = 2,
  PC_ERR_VALIDATION = 3, /* dataset failed validation; see the report */

  PC_ERR_IO = 10,
  PC_ERR_MISSING_HEADER,
  PC_ERR_BAD_FIELD,
  PC_ERR_DUPLICATE_KEY,
  PC_ERR_PARSE,
  PC_ERR_UNKNOWN_LEVEL,
  PC_ERR_EMPTY_PROBLEM_LIST,
  PC_ERR_DUPLICATE_PROBLEM,

  PC_ERR_EMPTY_INPUT = 30,
  PC_ERR_NON_FINITE_INPUT,
  PC_ERR_DOMAIN,
  PC_ERR_TOO_LARGE,
  PC_ERR_NON_POSITIVE_VALUE,
  PC_ERR_TOO_FEW_PAIRS,
  PC_ERR_LENGTH_MISMATCH,
  PC_ERR_RAGGED_MATRIX,
  PC_ERR_INVALID_RANK_ROW,

  PC_ERR_PLANNER_NOT_IN_LEVEL = 50,
  PC_ERR_NO_PROBLEMS,
  PC_ERR_MIXED_LEVELS,
  PC_ERR_INCONSISTENT_COMPARISONS,
  PC_ERR_EMPTY_POOL,
  PC_ERR_SAMPLE_SIZE_MISMATCH,
  PC_ERR_TOO_FEW_JUDGES,
  PC_ERR_EMPTY_DOMAIN_LIST,
  PC_ERR_UNKNOWN_CELL,
  PC_ERR_INVALID_CONFIG
} pc_status;

/* Message for the last failing call on this thread ("" if none). */
PLANCOMP_API const char* pc_last_error(void);
PLANCOMP_API const char* pc_status_name(pc_status status);
PLANCOMP_API const char* pc_version(void);

typedef struct pc_dataset pc_dataset;
typedef struct pc_config pc_config;
typedef struct pc_report pc_report;

PLANCOMP_API pc_status pc_dataset_load(const char* runs_csv_path, const char* manifest_json_path, pc_dataset** out);
PLANCOMP_API pc_status pc_dataset_parse(const char* runs_csv_text, const char* manifest_json_text, pc_dataset** out);
PLANCOMP_API void pc_dataset_free(pc_dataset* dataset);
PLANCOMP_API size_t pc_dataset_record_count(const pc_dataset* dataset);
/* Writes 16 hex digits plus NUL into buf (at least 17 bytes). */
PLANCOMP_API pc_status pc_dataset_hash(const pc_dataset* dataset, char* buf, size_t buf_size);

PLANCOMP_API pc_status pc_config_new(pc_config** out);
PLANCOMP_API void pc_config_free(pc_config* config);
PLANCOMP_API pc_status pc_config_set(pc_config* config, const char* key, const char* value);
PLANCOMP_API pc_status pc_config_load_file(pc_config* config, const char* path);

typedef enum pc_command {
  PC_CMD_VALIDATE = 0,
  PC_CMD_COMPARE,
  PC_CMD_ORDER,
  PC_CMD_HARDNESS,
  PC_CMD_AGREEMENT,
  PC_CMD_SCALING,
  PC_CMD_SERIES
} pc_command;

/* Optional fields are NULL when unset. */
typedef struct pc_request {
  const char* level;    /* "strips", "numeric", ... */
  const char* measure;  /* "speed", "metric", "seq", "conc" */
  const char* category; /* "auto" (default) or "hand" */
  const char* size;     /* "small" or "large" */
  const char* domain;   /* series only */
  int reduce;
  int cross;
} pc_request;

/* Validates the dataset first; on validation errors returns PC_ERR_VALIDATION
   and still fills *out with the validation report. */
PLANCOMP_API pc_status pc_run(pc_command command, const pc_dataset* dataset, const pc_config* config,
                              const pc_request* request, pc_report** out);
PLANCOMP_API void pc_report_free(pc_report* report);
PLANCOMP_API size_t pc_report_file_count(const pc_report* report);
PLANCOMP_API const char* pc_report_file_name(const pc_report* report, size_t index);
PLANCOMP_API const char* pc_report_file_contents(const pc_report* report, size_t index);
PLANCOMP_API const char* pc_report_summary(const pc_report* report);
PLANCOMP_API size_t pc_report_warning_count(const pc_report* report);
PLANCOMP_API const char* pc_report_warning(const pc_report* report, size_t index);
PLANCOMP_API int pc_report_validation_errors(const pc_report* report);
/* dir NULL means the configured output_dir. */
PLANCOMP_API pc_status pc_report_write(const pc_report* report, const pc_config* config, const char* dir);

/* Statistics on plain arrays. */

typedef struct pc_wilcoxon {
  int n_effective;
  double rank_sum_pos;
  double rank_sum_neg;
  double T;
  double z;
  double p_two_sided;
  int favored; /* 0 none, 1 first, 2 second */
} pc_wilcoxon;

/* Positive diffs are wins for the first planner; +-INFINITY for an unsolved side. */
PLANCOMP_API pc_status pc_wilcoxon_test(const double* diffs, size_t n, pc_wilcoxon* out);
/* Exact two-sided p over all sign assignments; n nonzero diffs <= 20. */
PLANCOMP_API pc_status pc_wilcoxon_exact_p(const double* diffs, size_t n, double* out);
PLANCOMP_API pc_status pc_proportion_test(int wins, int n, double* z, double* p);
PLANCOMP_API pc_status pc_paired_t(const double* a, const double* b, size_t n, double* t, int* df, double* p);
PLANCOMP_API pc_status pc_spearman(const double* rank_a, const double* rank_b, size_t n, double* rho, double* z,
                                   double* p);
/* ranks is row-major, n_judges rows of k ranks each. */
PLANCOMP_API pc_status pc_mrc(const double* ranks, size_t n_judges, size_t k, double* F, int* df1, int* df2,
                              double* p);

PLANCOMP_API double pc_normal_cdf(double z);
PLANCOMP_API double pc_t_cdf(double t, int df);
PLANCOMP_API double pc_f_cdf(double x, int d1, int d2);

#ifdef __cplusplus
}
#endif

#endif
