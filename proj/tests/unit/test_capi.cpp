// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "plancomp/plancomp.h"

namespace {

const std::string kData = PLANCOMP_TEST_DATA;

struct Loaded {
  pc_dataset* data = nullptr;
  pc_config* config = nullptr;
  Loaded() {
    REQUIRE(pc_dataset_load((kData + "/smoke_runs.csv").c_str(), (kData + "/smoke_manifest.json").c_str(), &data) ==
            PC_OK);
    REQUIRE(pc_config_new(&config) == PC_OK);
    REQUIRE(pc_config_set(config, "bootstrap_B", "500") == PC_OK);
  }
  ~Loaded() {
    pc_dataset_free(data);
    pc_config_free(config);
  }
};

}  // namespace

TEST_CASE("status names, version and null arguments") {
  CHECK(std::string(pc_version()) == "1.0.0");
  CHECK(std::string(pc_status_name(PC_OK)) == "ok");
  CHECK(std::string(pc_status_name(PC_ERR_TOO_FEW_JUDGES)) == "TooFewJudges");
  pc_dataset* d = nullptr;
  CHECK(pc_dataset_load(nullptr, "x", &d) == PC_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(pc_last_error()) > 0);
  CHECK(pc_config_new(nullptr) == PC_ERR_NULL_ARGUMENT);
  pc_dataset_free(nullptr);
  pc_config_free(nullptr);
  pc_report_free(nullptr);
}

TEST_CASE("input errors map to status codes with a message") {
  pc_dataset* d = nullptr;
  CHECK(pc_dataset_load("/nonexistent/runs.csv", "/nonexistent/m.json", &d) == PC_ERR_IO);
  CHECK(d == nullptr);
  const char* manifest = R"({"planners": [], "problem_sets": []})";
  CHECK(pc_dataset_parse("planner,domain\n", manifest, &d) == PC_ERR_MISSING_HEADER);
  CHECK(pc_dataset_parse(
            "planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length\n"
            "a,d,strips,p1,2,,,,\n",
            manifest, &d) == PC_ERR_BAD_FIELD);
  CHECK(std::string(pc_last_error()).find("solved") != std::string::npos);
  CHECK(pc_dataset_parse("planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length\n",
                         "{not json", &d) == PC_ERR_PARSE);

  pc_config* c = nullptr;
  REQUIRE(pc_config_new(&c) == PC_OK);
  CHECK(pc_config_set(c, "colour", "red") == PC_ERR_INVALID_CONFIG);
  CHECK(pc_config_set(c, "alpha_scaling", "0.9") == PC_OK);  // range is checked when running
  pc_config_free(c);
}

TEST_CASE("load, hash and run every command") {
  Loaded l;
  CHECK(pc_dataset_record_count(l.data) == 240);
  char hash[17];
  REQUIRE(pc_dataset_hash(l.data, hash, sizeof hash) == PC_OK);
  CHECK(std::strlen(hash) == 16);
  char tiny[4];
  CHECK(pc_dataset_hash(l.data, tiny, sizeof tiny) == PC_ERR_TOO_LARGE);

  for (int command = PC_CMD_VALIDATE; command <= PC_CMD_SERIES; ++command) {
    pc_request request{};
    if (command == PC_CMD_SERIES) {
      request.domain = "rovers";
      request.level = "strips";
    }
    pc_report* r = nullptr;
    CAPTURE(command);
    REQUIRE(pc_run(static_cast<pc_command>(command), l.data, l.config, &request, &r) == PC_OK);
    REQUIRE(pc_report_file_count(r) > 0);
    for (size_t i = 0; i < pc_report_file_count(r); ++i) {
      CHECK(std::string(pc_report_file_contents(r, i)).find(hash) != std::string::npos);
      CHECK(std::strlen(pc_report_file_name(r, i)) > 0);
    }
    CHECK(pc_report_file_name(r, pc_report_file_count(r)) == nullptr);
    CHECK(std::strlen(pc_report_summary(r)) > 0);
    CHECK(pc_report_validation_errors(r) == 0);
    pc_report_free(r);
  }
}

TEST_CASE("request parsing and run errors") {
  Loaded l;
  pc_report* r = nullptr;
  pc_request bad_level{};
  bad_level.level = "orbital";
  CHECK(pc_run(PC_CMD_COMPARE, l.data, l.config, &bad_level, &r) == PC_ERR_UNKNOWN_LEVEL);
  pc_request bad_measure{};
  bad_measure.measure = "fastness";
  CHECK(pc_run(PC_CMD_COMPARE, l.data, l.config, &bad_measure, &r) == PC_ERR_INVALID_CONFIG);
  pc_request series{};
  CHECK(pc_run(PC_CMD_SERIES, l.data, l.config, &series, &r) == PC_ERR_UNKNOWN_CELL);
  CHECK(r == nullptr);
  REQUIRE(pc_config_set(l.config, "alpha_agreement", "0.7") == PC_OK);
  CHECK(pc_run(PC_CMD_AGREEMENT, l.data, l.config, nullptr, &r) == PC_ERR_INVALID_CONFIG);
}

TEST_CASE("validation failures return the validation report") {
  const char* runs =
      "planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length\n"
      "ghost,d,strips,p1,1,5,,3,2\n";
  const char* manifest =
      R"({"planners": [{"name": "a", "category": "auto", "levels": ["strips"]}],
          "problem_sets": [{"domain": "d", "level": "strips", "size_class": "small",
                            "quality_direction": "minimize", "problems": ["p1"]}]})";
  pc_dataset* d = nullptr;
  REQUIRE(pc_dataset_parse(runs, manifest, &d) == PC_OK);
  pc_config* c = nullptr;
  REQUIRE(pc_config_new(&c) == PC_OK);
  pc_report* r = nullptr;
  CHECK(pc_run(PC_CMD_COMPARE, d, c, nullptr, &r) == PC_ERR_VALIDATION);
  REQUIRE(r != nullptr);
  CHECK(pc_report_validation_errors(r) == 1);
  CHECK(std::string(pc_report_file_contents(r, 0)).find("ghost") != std::string::npos);
  pc_report_free(r);
  pc_config_free(c);
  pc_dataset_free(d);
}

TEST_CASE("report write") {
  Loaded l;
  pc_report* r = nullptr;
  REQUIRE(pc_run(PC_CMD_AGREEMENT, l.data, l.config, nullptr, &r) == PC_OK);
  const auto dir = std::filesystem::temp_directory_path() / "plancomp_capi_write";
  std::filesystem::remove_all(dir);
  CHECK(pc_report_write(r, l.config, dir.string().c_str()) == PC_OK);
  CHECK(std::filesystem::exists(dir / pc_report_file_name(r, 0)));
  REQUIRE(pc_config_set(l.config, "output_dir", (dir / "configured").string().c_str()) == PC_OK);
  CHECK(pc_report_write(r, l.config, nullptr) == PC_OK);
  CHECK(std::filesystem::exists(dir / "configured" / pc_report_file_name(r, 1)));
  std::filesystem::remove_all(dir);
  pc_report_free(r);
}

TEST_CASE("statistics on plain arrays") {
  const double diffs[] = {1, 2, 3, 4, 5, 6, 7, -1e9, -2e9, -3e9};
  pc_wilcoxon w{};
  REQUIRE(pc_wilcoxon_test(diffs, 10, &w) == PC_OK);
  CHECK(w.rank_sum_pos == 28.0);
  CHECK(w.rank_sum_neg == 27.0);
  CHECK(w.T == 27.0);
  CHECK(w.favored == 1);
  double exact = 0;
  REQUIRE(pc_wilcoxon_exact_p(diffs, 10, &exact) == PC_OK);
  CHECK(exact > 0.9);
  CHECK(pc_wilcoxon_test(nullptr, 3, &w) == PC_ERR_NULL_ARGUMENT);
  CHECK(pc_wilcoxon_test(diffs, 0, &w) == PC_ERR_EMPTY_INPUT);

  double z = 0, p = 0;
  REQUIRE(pc_proportion_test(7, 10, &z, &p) == PC_OK);
  CHECK(z == doctest::Approx(1.2649110640673518));
  CHECK(pc_proportion_test(11, 10, &z, &p) == PC_ERR_DOMAIN);

  const double a[] = {1, 2, 1}, b[] = {3, 6, 2};
  double t = 0;
  int df = 0;
  REQUIRE(pc_paired_t(a, b, 3, &t, &df, &p) == PC_OK);
  CHECK(t == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(df == 2);

  std::vector<double> x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = i + 1;
    y[i] = 10 - i;
  }
  double rho = 0;
  REQUIRE(pc_spearman(x.data(), x.data(), 10, &rho, &z, &p) == PC_OK);
  CHECK(z == -3.0);
  REQUIRE(pc_spearman(x.data(), y.data(), 10, &rho, &z, &p) == PC_OK);
  CHECK(z == 3.0);
  CHECK(rho == -1.0);

  const double ranks[] = {1, 2, 3, 2, 1, 3};
  double F = 0;
  int d1 = 0, d2 = 0;
  REQUIRE(pc_mrc(ranks, 2, 3, &F, &d1, &d2, &p) == PC_OK);
  CHECK(F == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(d1 == 2);
  CHECK(d2 == 3);
  const double bad[] = {1, 1, 3, 2, 1, 3};
  CHECK(pc_mrc(bad, 2, 3, &F, &d1, &d2, &p) == PC_ERR_INVALID_RANK_ROW);

  CHECK(pc_normal_cdf(0.0) == 0.5);
  CHECK(pc_t_cdf(0.0, 5) == 0.5);
  CHECK(pc_f_cdf(5.3, 21, 110) > 0.95);
  CHECK(std::isnan(pc_t_cdf(1.0, 0)));
}
