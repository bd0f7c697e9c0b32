#include "plancomp/plancomp.h"

#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/distributions.hpp"
#include "plancomp/error.hpp"
#include "plancomp/report.hpp"
#include "plancomp/stattests.hpp"

struct pc_dataset {
  plancomp::Dataset data;
};

struct pc_config {
  plancomp::ReportConfig config;
};

struct pc_report {
  plancomp::Report report;
};

namespace {

thread_local std::string g_last_error;

pc_status status_of(plancomp::ErrorCode code) {
  using plancomp::ErrorCode;
  switch (code) {
    case ErrorCode::Io: return PC_ERR_IO;
    case ErrorCode::MissingHeader: return PC_ERR_MISSING_HEADER;
    case ErrorCode::BadField: return PC_ERR_BAD_FIELD;
    case ErrorCode::DuplicateKey: return PC_ERR_DUPLICATE_KEY;
    case ErrorCode::ParseError: return PC_ERR_PARSE;
    case ErrorCode::UnknownLevel: return PC_ERR_UNKNOWN_LEVEL;
    case ErrorCode::EmptyProblemList: return PC_ERR_EMPTY_PROBLEM_LIST;
    case ErrorCode::DuplicateProblem: return PC_ERR_DUPLICATE_PROBLEM;
    case ErrorCode::EmptyInput: return PC_ERR_EMPTY_INPUT;
    case ErrorCode::NonFiniteInput: return PC_ERR_NON_FINITE_INPUT;
    case ErrorCode::DomainError: return PC_ERR_DOMAIN;
    case ErrorCode::TooLarge: return PC_ERR_TOO_LARGE;
    case ErrorCode::NonPositiveValue: return PC_ERR_NON_POSITIVE_VALUE;
    case ErrorCode::TooFewPairs: return PC_ERR_TOO_FEW_PAIRS;
    case ErrorCode::LengthMismatch: return PC_ERR_LENGTH_MISMATCH;
    case ErrorCode::RaggedMatrix: return PC_ERR_RAGGED_MATRIX;
    case ErrorCode::InvalidRankRow: return PC_ERR_INVALID_RANK_ROW;
    case ErrorCode::PlannerNotInLevel: return PC_ERR_PLANNER_NOT_IN_LEVEL;
    case ErrorCode::NoProblems: return PC_ERR_NO_PROBLEMS;
    case ErrorCode::MixedLevels: return PC_ERR_MIXED_LEVELS;
    case ErrorCode::InconsistentComparisons: return PC_ERR_INCONSISTENT_COMPARISONS;
    case ErrorCode::EmptyPool: return PC_ERR_EMPTY_POOL;
    case ErrorCode::SampleSizeMismatch: return PC_ERR_SAMPLE_SIZE_MISMATCH;
    case ErrorCode::TooFewJudges: return PC_ERR_TOO_FEW_JUDGES;
    case ErrorCode::EmptyDomainList: return PC_ERR_EMPTY_DOMAIN_LIST;
    case ErrorCode::UnknownCell: return PC_ERR_UNKNOWN_CELL;
    case ErrorCode::InvalidConfig: return PC_ERR_INVALID_CONFIG;
  }
  return PC_ERR_INTERNAL;
}

template <typename F>
pc_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const plancomp::RowError& e) {
    g_last_error = "row " + std::to_string(e.row()) + ", column " + e.column() + ": " + e.what();
    return status_of(e.code());
  } catch (const plancomp::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return PC_ERR_INTERNAL;
  }
}

pc_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return PC_ERR_NULL_ARGUMENT;
}

plancomp::ReportRequest to_request(const pc_request* r) {
  plancomp::ReportRequest out;
  if (!r) return out;
  if (r->level) out.level = plancomp::parse_level(r->level);
  if (r->measure) {
    out.measure = plancomp::parse_measure(r->measure);
    if (!out.measure) throw plancomp::Error(plancomp::ErrorCode::InvalidConfig, std::string("unknown measure ") + r->measure);
  }
  if (r->category) {
    auto c = plancomp::parse_category(r->category);
    if (!c) throw plancomp::Error(plancomp::ErrorCode::InvalidConfig, std::string("unknown category ") + r->category);
    out.category = *c;
  }
  if (r->size) {
    out.size = plancomp::parse_size_class(r->size);
    if (!out.size) throw plancomp::Error(plancomp::ErrorCode::InvalidConfig, std::string("unknown size class ") + r->size);
  }
  if (r->domain) out.domain = std::string(r->domain);
  out.reduce = r->reduce != 0;
  out.cross = r->cross != 0;
  return out;
}

}  // namespace

extern "C" {

const char* pc_last_error(void) { return g_last_error.c_str(); }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK: return "ok";
    case PC_ERR_NULL_ARGUMENT: return "null-argument";
    case PC_ERR_INTERNAL: return "internal";
    case PC_ERR_VALIDATION: return "validation-failed";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(plancomp::ErrorCode::InvalidConfig); ++c) {
    const auto code = static_cast<plancomp::ErrorCode>(c);
    if (status_of(code) == status) return plancomp::to_string(code);
  }
  return "unknown";
}

const char* pc_version(void) { return plancomp::kVersion.data(); }

pc_status pc_dataset_load(const char* runs_csv_path, const char* manifest_json_path, pc_dataset** out) {
  if (!runs_csv_path || !manifest_json_path || !out) return null_argument("pc_dataset_load");
  *out = nullptr;
  return guarded([&] {
    auto runs = plancomp::load_runs(runs_csv_path);
    auto manifest = plancomp::load_manifest(manifest_json_path);
    *out = new pc_dataset{plancomp::Dataset(std::move(runs), std::move(manifest))};
    return PC_OK;
  });
}

pc_status pc_dataset_parse(const char* runs_csv_text, const char* manifest_json_text, pc_dataset** out) {
  if (!runs_csv_text || !manifest_json_text || !out) return null_argument("pc_dataset_parse");
  *out = nullptr;
  return guarded([&] {
    auto runs = plancomp::parse_runs(runs_csv_text);
    auto manifest = plancomp::parse_manifest(manifest_json_text);
    *out = new pc_dataset{plancomp::Dataset(std::move(runs), std::move(manifest))};
    return PC_OK;
  });
}

void pc_dataset_free(pc_dataset* dataset) { delete dataset; }

size_t pc_dataset_record_count(const pc_dataset* dataset) { return dataset ? dataset->data.runs().size() : 0; }

pc_status pc_dataset_hash(const pc_dataset* dataset, char* buf, size_t buf_size) {
  if (!dataset || !buf) return null_argument("pc_dataset_hash");
  return guarded([&] {
    const auto hash = dataset->data.content_hash();
    if (buf_size < hash.size() + 1) throw plancomp::Error(plancomp::ErrorCode::TooLarge, "hash buffer too small");
    std::memcpy(buf, hash.c_str(), hash.size() + 1);
    return PC_OK;
  });
}

pc_status pc_config_new(pc_config** out) {
  if (!out) return null_argument("pc_config_new");
  return guarded([&] {
    *out = new pc_config{};
    return PC_OK;
  });
}

void pc_config_free(pc_config* config) { delete config; }

pc_status pc_config_set(pc_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return null_argument("pc_config_set");
  return guarded([&] {
    config->config.set(key, value);
    return PC_OK;
  });
}

pc_status pc_config_load_file(pc_config* config, const char* path) {
  if (!config || !path) return null_argument("pc_config_load_file");
  return guarded([&] {
    config->config.load_file(path);
    return PC_OK;
  });
}

pc_status pc_run(pc_command command, const pc_dataset* dataset, const pc_config* config, const pc_request* request,
                 pc_report** out) {
  if (!dataset || !config || !out) return null_argument("pc_run");
  *out = nullptr;
  return guarded([&] {
    if (command < PC_CMD_VALIDATE || command > PC_CMD_SERIES)
      throw plancomp::Error(plancomp::ErrorCode::InvalidConfig, "unknown command");
    const auto req = to_request(request);
    config->config.validate();
    auto validation = plancomp::report_validate(dataset->data, config->config);
    if (validation.validation_errors > 0) {
      g_last_error = std::to_string(validation.validation_errors) + " validation error(s)";
      *out = new pc_report{std::move(validation)};
      return PC_ERR_VALIDATION;
    }
    const auto cmd = static_cast<plancomp::Command>(command);
    if (cmd == plancomp::Command::Validate) {
      *out = new pc_report{std::move(validation)};
    } else {
      *out = new pc_report{plancomp::run_report(cmd, dataset->data, config->config, req)};
    }
    return PC_OK;
  });
}

void pc_report_free(pc_report* report) { delete report; }

size_t pc_report_file_count(const pc_report* report) { return report ? report->report.files.size() : 0; }

const char* pc_report_file_name(const pc_report* report, size_t index) {
  if (!report || index >= report->report.files.size()) return nullptr;
  return report->report.files[index].name.c_str();
}

const char* pc_report_file_contents(const pc_report* report, size_t index) {
  if (!report || index >= report->report.files.size()) return nullptr;
  return report->report.files[index].contents.c_str();
}

const char* pc_report_summary(const pc_report* report) { return report ? report->report.summary.c_str() : ""; }

size_t pc_report_warning_count(const pc_report* report) { return report ? report->report.warnings.size() : 0; }

const char* pc_report_warning(const pc_report* report, size_t index) {
  if (!report || index >= report->report.warnings.size()) return nullptr;
  return report->report.warnings[index].c_str();
}

int pc_report_validation_errors(const pc_report* report) { return report ? report->report.validation_errors : 0; }

pc_status pc_report_write(const pc_report* report, const pc_config* config, const char* dir) {
  if (!report || (!dir && !config)) return null_argument("pc_report_write");
  return guarded([&] {
    plancomp::write_report(report->report, dir ? std::string(dir) : config->config.output_dir);
    return PC_OK;
  });
}

pc_status pc_wilcoxon_test(const double* diffs, size_t n, pc_wilcoxon* out) {
  if ((!diffs && n) || !out) return null_argument("pc_wilcoxon_test");
  return guarded([&] {
    const auto r = plancomp::wilcoxon_matched_pairs({diffs, n});
    out->n_effective = r.n_effective;
    out->rank_sum_pos = r.rank_sum_pos;
    out->rank_sum_neg = r.rank_sum_neg;
    out->T = r.T;
    out->z = r.z;
    out->p_two_sided = r.p_two_sided.value();
    out->favored = r.favored == plancomp::Favored::First ? 1 : r.favored == plancomp::Favored::Second ? 2 : 0;
    return PC_OK;
  });
}

pc_status pc_wilcoxon_exact_p(const double* diffs, size_t n, double* out) {
  if ((!diffs && n) || !out) return null_argument("pc_wilcoxon_exact_p");
  return guarded([&] {
    *out = plancomp::wilcoxon_exact_p({diffs, n}).value();
    return PC_OK;
  });
}

pc_status pc_proportion_test(int wins, int n, double* z, double* p) {
  if (!z || !p) return null_argument("pc_proportion_test");
  return guarded([&] {
    const auto r = plancomp::proportion_test(wins, n);
    *z = r.z;
    *p = r.p_two_sided.value();
    return PC_OK;
  });
}

pc_status pc_paired_t(const double* a, const double* b, size_t n, double* t, int* df, double* p) {
  if (((!a || !b) && n) || !t || !df || !p) return null_argument("pc_paired_t");
  return guarded([&] {
    std::vector<std::pair<double, double>> pairs(n);
    for (size_t i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
    const auto r = plancomp::paired_t_normalized(pairs);
    *t = r.t;
    *df = r.df;
    *p = r.p_two_sided.value();
    return PC_OK;
  });
}

pc_status pc_spearman(const double* rank_a, const double* rank_b, size_t n, double* rho, double* z, double* p) {
  if (((!rank_a || !rank_b) && n) || !rho || !z || !p) return null_argument("pc_spearman");
  return guarded([&] {
    const auto r = plancomp::spearman_test({rank_a, n}, {rank_b, n});
    *rho = r.rho;
    *z = r.z;
    *p = r.p_two_sided.value();
    return PC_OK;
  });
}

pc_status pc_mrc(const double* ranks, size_t n_judges, size_t k, double* F, int* df1, int* df2, double* p) {
  if ((!ranks && n_judges * k != 0) || !F || !df1 || !df2 || !p) return null_argument("pc_mrc");
  return guarded([&] {
    std::vector<plancomp::RankVector> rows(n_judges);
    for (size_t j = 0; j < n_judges; ++j) rows[j].assign(ranks + j * k, ranks + (j + 1) * k);
    const auto r = plancomp::mrc_test(rows);
    *F = r.F;
    *df1 = r.df1;
    *df2 = r.df2;
    *p = r.p.value();
    return PC_OK;
  });
}

double pc_normal_cdf(double z) {
  try {
    return plancomp::std_normal_cdf(z).value();
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double pc_t_cdf(double t, int df) {
  try {
    return plancomp::student_t_cdf(t, df).value();
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double pc_f_cdf(double x, int d1, int d2) {
  try {
    return plancomp::f_cdf(x, d1, d2).value();
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // extern "C"
