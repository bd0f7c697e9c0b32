#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "plancomp/error.hpp"
#include "plancomp/report.hpp"
#include "testkit.hpp"

using namespace plancomp;
using testkit::problem_name;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

ComparisonResult cell(double z, double p, Favored favored, int prop_wins = 0, int prop_n = 0) {
  ComparisonResult c;
  c.planner_a = "a";
  c.planner_b = "b";
  c.n = 40;
  c.wilcoxon.z = z;
  c.wilcoxon.p_two_sided = Probability(p);
  c.wilcoxon.favored = favored;
  if (prop_n > 0) c.proportion = proportion_test(prop_wins, prop_n);
  return c;
}

// Three automated planners over Strips (two domains) and Numeric (one domain);
// "late" never entered Numeric.
Dataset small_dataset() {
  testkit::Builder b;
  b.planner("fast", Category::FullyAutomated, {Level::Strips, Level::Numeric})
      .planner("steady", Category::FullyAutomated, {Level::Strips, Level::Numeric})
      .planner("late", Category::FullyAutomated, {Level::Strips})
      .set("depots", Level::Strips, 12)
      .set("rovers", Level::Strips, 12)
      .set("satellite", Level::Numeric, 10, SizeClass::Small, QualityDirection::Maximize);
  std::mt19937_64 rng(12);
  for (const char* d : {"depots", "rovers"})
    for (int i = 1; i <= 12; ++i) {
      b.solved("fast", d, Level::Strips, problem_name(i), 10 * i + static_cast<int>(rng() % 5), std::nullopt, 10 + i,
               5 + i);
      b.solved("steady", d, Level::Strips, problem_name(i), 40 * i + static_cast<int>(rng() % 50), std::nullopt,
               12 + i, 6 + i);
      if (i % 4 == 0)
        b.unsolved("late", d, Level::Strips, problem_name(i));
      else
        b.solved("late", d, Level::Strips, problem_name(i), 900 * i, std::nullopt, 20 + i, 9 + i);
    }
  for (int i = 1; i <= 10; ++i) {
    b.solved("fast", "satellite", Level::Numeric, problem_name(i), 20 * i, 100.0 + i);
    if (i == 3)
      b.unsolved("steady", "satellite", Level::Numeric, problem_name(i));
    else
      b.solved("steady", "satellite", Level::Numeric, problem_name(i), 30 * i, 90.0 + i);
  }
  return b.build();
}

ReportConfig quick_config() {
  ReportConfig c;
  c.bootstrap_B = 500;
  return c;
}

}  // namespace

TEST_CASE("comparison cells") {
  CHECK(render_comparison_cell(cell(6.2, 1e-9, Favored::First), 0.001) == "6.2 *");
  CHECK(render_comparison_cell(cell(1.9, 0.0574, Favored::First), 0.001) == "**1.9 0.06**");
  CHECK(render_comparison_cell(cell(-2.5, 0.004, Favored::Second), 0.001) == "**2.5 < 0.01**");

  // Wilcoxon insignificant, win proportion significant: both shown, proportion in brackets
  const auto fallback = render_comparison_cell(cell(2.1, 0.04, Favored::First, 58, 70), 0.001);
  const auto zp = format_z(proportion_test(58, 70).z);
  CHECK(zp == "5.5");
  CHECK(fallback == "**2.1 (5.5) 0.04 (*)**");
  auto shaped = cell(2.1, 0.04, Favored::First);
  shaped.proportion.n = 90;
  shaped.proportion.wins = 76;
  shaped.proportion.z = 3.3;
  shaped.proportion.p_two_sided = Probability(0.00097);
  CHECK(render_comparison_cell(shaped, 0.001).find("2.1 (3.3) 0.04 (*)") != std::string::npos);

  auto small = cell(3.0, 1e-5, Favored::First);
  small.n = 4;
  small.too_small = true;
  CHECK(render_comparison_cell(small, 0.001) == "**3 * [n<6]**");
}

TEST_CASE("number formats") {
  CHECK(format_z(6.2) == "6.2");
  CHECK(format_z(-0.114) == "0.11");
  CHECK(format_z(12.34) == "12");
  CHECK(format_pairwise_p(0.0004, 0.001) == "*");
  CHECK(format_pairwise_p(0.92, 0.001) == "0.92");
  CHECK(format_hardness_cell(1, 3) == "1/3");
  CHECK(format_f_cell(21, 110, 5.3, true) == "F_{21,110} = 5.3");
  CHECK(format_f_cell(3, 12, 1.234, false) == "**F_{3,12} = 1.23**");
}

TEST_CASE("config keys, files and validation") {
  ReportConfig c;
  c.set("alpha_pairwise", "0.01");
  c.set("bootstrap_B", "2000");
  c.set("seed", "18446744073709551615");
  CHECK(c.alpha_pairwise == 0.01);
  CHECK(c.bootstrap_B == 2000);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(code_of([&] { c.set("colour", "red"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { c.set("bootstrap_m", "twenty"); }) == ErrorCode::InvalidConfig);

  const auto path = std::filesystem::temp_directory_path() / "plancomp_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\n\nalpha_scaling = 0.1\ncutoff_ms=60000\n";
  }
  ReportConfig f;
  f.load_file(path.string());
  CHECK(f.alpha_scaling == 0.1);
  CHECK(f.cutoff_ms == 60000);
  std::filesystem::remove(path);

  ReportConfig bad;
  bad.alpha_agreement = 0.5;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidConfig);
  bad = ReportConfig{};
  bad.bootstrap_m = 0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { run_report(Command::Compare, small_dataset(), bad, {}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("every output carries the metadata header and is reproducible") {
  const auto data = small_dataset();
  const auto config = quick_config();
  const auto meta = metadata_lines(config, data, Command::Hardness);
  CHECK(meta[0] == "plancomp 1.0.0 hardness");
  CHECK(meta[1] == "seed=3 B=500 m=20 cutoff_ms=1800000 rng=splitmix64-per-sample-stream");
  CHECK(meta[2] == "alpha_pairwise=0.001 alpha_magnitude=0.05 alpha_agreement=0.05 alpha_scaling=0.05");
  CHECK(meta[3] == "dataset=" + data.content_hash());

  ReportRequest series;
  series.domain = "satellite";
  series.level = Level::Numeric;
  for (auto command : {Command::Validate, Command::Compare, Command::Order, Command::Hardness, Command::Agreement,
                       Command::Scaling, Command::Series}) {
    const auto request = command == Command::Series ? series : ReportRequest{};
    const auto first = run_report(command, data, config, request);
    const auto second = run_report(command, data, config, request);
    REQUIRE_FALSE(first.files.empty());
    REQUIRE(first.files.size() == second.files.size());
    for (std::size_t i = 0; i < first.files.size(); ++i) {
      CAPTURE(first.files[i].name);
      CHECK(first.files[i].name == second.files[i].name);
      CHECK(first.files[i].contents == second.files[i].contents);
      const bool dot = first.files[i].name.ends_with(".dot");
      const std::string prefix = dot ? "// " : "# ";
      CHECK(first.files[i].contents.find(prefix + "plancomp 1.0.0 " + std::string(to_string(command))) == 0);
      CHECK(first.files[i].contents.find(prefix + "dataset=" + data.content_hash()) != std::string::npos);
      CHECK(first.files[i].contents.find("rng=splitmix64-per-sample-stream") != std::string::npos);
    }
  }
}

TEST_CASE("thread count does not change hardness output") {
  const auto data = small_dataset();
  auto one = quick_config();
  auto many = quick_config();
  many.threads = 8;
  const auto a = report_hardness(data, one, {});
  const auto b = report_hardness(data, many, {});
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(a.files[i].contents == b.files[i].contents);
}

TEST_CASE("compare report: files, footnote and csv") {
  ReportRequest request;
  request.level = Level::Strips;
  request.measure = Measure::Speed;
  const auto r = report_compare(small_dataset(), quick_config(), request);
  std::vector<std::string> names;
  for (const auto& f : r.files) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"compare_auto_small_speed.txt", "compare_auto_small_speed.csv",
                                          "magnitude_auto_small_speed.txt", "magnitude_auto_small_speed.csv"});
  const auto& txt = r.files[0].contents;
  CHECK(txt.find("'*' indicates a result less than 0.001") != std::string::npos);
  // speed has no double-hits table; quality measures do
  CHECK(txt.find("double hits") == std::string::npos);
  const auto& csv = r.files[1].contents;
  CHECK(csv.find("level,size_class,measure,mode,planner_a,planner_b,favored,n,") != std::string::npos);
  // three planners: three pairs in each of the two pairing modes
  std::istringstream lines(csv);
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("strips,", 0) == 0) ++rows;
  CHECK(rows == 3);

  request.measure = Measure::QualitySeq;
  const auto q = report_compare(small_dataset(), quick_config(), request);
  CHECK(q.files[0].name == "compare_auto_small_seq.txt");
  CHECK(q.files[0].contents.find("STRIPS (Seq) double hits") != std::string::npos);
  std::istringstream qlines(q.files[1].contents);
  rows = 0;
  for (std::string line; std::getline(qlines, line);)
    if (line.rfind("strips,", 0) == 0) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("order report writes one graph per measure, reduce is recorded") {
  ReportRequest request;
  request.level = Level::Strips;
  const auto r = report_order(small_dataset(), quick_config(), request);
  REQUIRE(r.files.size() == 3);  // speed, seq, conc
  CHECK(r.files[0].name == "order_auto_small_strips_speed.dot");
  CHECK(r.files[0].contents.find("fast -> steady [style=solid") != std::string::npos);
  request.reduce = true;
  const auto reduced = report_order(small_dataset(), quick_config(), request);
  CHECK(reduced.files[0].contents.find("// transitive reduction applied") != std::string::npos);
  CHECK(reduced.files[0].contents.find("fast -> late [style=solid") == std::string::npos);
}

TEST_CASE("scaling matrix marks missing data and insufficient agreement") {
  ReportRequest request;
  request.level = Level::Numeric;
  const auto r = report_scaling(small_dataset(), quick_config(), request);
  REQUIRE(r.files.size() == 2);
  const auto& txt = r.files[0].contents;
  // Numeric has a single domain, so fast/steady cannot agree on two; late has no Numeric data
  CHECK(txt.find("fast\t-\to\tx\n") != std::string::npos);
  CHECK(txt.find("steady\t\t-\tx\n") != std::string::npos);
  CHECK(txt.find("x = one planner produced no data") != std::string::npos);
  CHECK(r.files[1].contents.find("fast,steady,numeric,0,,,incomparable-insufficient-agreement,") !=
        std::string::npos);
}

TEST_CASE("agreement grid bolds insignificant cells") {
  const auto r = report_agreement(small_dataset(), quick_config(), {});
  REQUIRE(r.files.size() == 2);
  CHECK(r.files[0].contents.find("F_{11,24}") != std::string::npos);
  CHECK(r.files[1].contents.find("domain,level,size_class,F,df1,df2,p,significant,judges") != std::string::npos);
}

TEST_CASE("series csv: direction, empty cells for unsolved, unknown cell") {
  ReportRequest request;
  request.domain = "satellite";
  request.level = Level::Numeric;
  const auto r = report_series(small_dataset(), quick_config(), request);
  REQUIRE(r.files.size() == 1);
  CHECK(r.files[0].name == "series_satellite_numeric_small_metric.csv");
  const auto& csv = r.files[0].contents;
  CHECK(csv.find("# direction=maximize\n") != std::string::npos);
  CHECK(csv.find("problem,fast,steady\n") != std::string::npos);
  CHECK(csv.find("p003,103,\n") != std::string::npos);
  CHECK(csv.find("p004,104,94\n") != std::string::npos);

  request.domain = "zeno";
  CHECK(code_of([&] { report_series(small_dataset(), quick_config(), request); }) == ErrorCode::UnknownCell);
  CHECK(code_of([&] { report_series(small_dataset(), quick_config(), {}); }) == ErrorCode::UnknownCell);
}

TEST_CASE("write_report creates the directory and writes every file") {
  const auto dir = std::filesystem::temp_directory_path() / "plancomp_report_test";
  std::filesystem::remove_all(dir);
  Report r;
  r.files = {{"a.txt", "one\n"}, {"b.csv", "x,y\n"}};
  write_report(r, (dir / "nested").string());
  std::ifstream in(dir / "nested" / "b.csv", std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "x,y\n");
  std::filesystem::remove_all(dir);
}
