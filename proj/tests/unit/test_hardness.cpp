#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "plancomp/error.hpp"
#include "plancomp/hardness.hpp"
#include "testkit.hpp"

using namespace plancomp;
using testkit::problem_name;

namespace {

using Times = std::vector<std::optional<std::int64_t>>;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

BootstrapDistribution fixed_distribution(std::vector<double> values, int m) {
  BootstrapDistribution d;
  d.samples = values;
  std::sort(values.begin(), values.end());
  d.sorted = std::move(values);
  d.B = static_cast<int>(d.sorted.size());
  d.m = m;
  return d;
}

// Four Strips domains of 20 problems: "quick" is solved at once by everyone,
// "stuck" by nobody, the rest spread out.
Dataset planted_dataset() {
  testkit::Builder b;
  for (const char* p : {"A", "B", "C"}) b.planner(p, Category::FullyAutomated, {Level::Strips});
  for (const char* d : {"quick", "mid1", "mid2", "stuck"}) b.set(d, Level::Strips, 20);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> spread(1000, 200000);
  for (const char* p : {"A", "B", "C"})
    for (int i = 1; i <= 20; ++i) {
      b.solved(p, "quick", Level::Strips, problem_name(i), 1);
      b.solved(p, "mid1", Level::Strips, problem_name(i), spread(rng));
      b.solved(p, "mid2", Level::Strips, problem_name(i), spread(rng));
      b.unsolved(p, "stuck", Level::Strips, problem_name(i));
    }
  return b.build();
}

}  // namespace

TEST_CASE("difficulty area: worked values") {
  CHECK(difficulty_area(Times(20, std::nullopt), kDefaultCutoffMs) == 36'000'000.0);
  CHECK(difficulty_area(Times(5, 0), kDefaultCutoffMs) == 0.0);
  CHECK(difficulty_area(Times{100, 500, 1000}, kDefaultCutoffMs) == 1600.0);
  // times past the cutoff are clamped to it
  CHECK(difficulty_area(Times{5000, std::nullopt, 10}, 1000) == 2010.0);
  CHECK(code_of([] { difficulty_area(Times{}, 10); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { difficulty_area(Times{1}, 0); }) == ErrorCode::DomainError);
}

TEST_CASE("property: area is monotone in each time and bounded by n * cutoff") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> t(0, 3000);
  for (int trial = 0; trial < 300; ++trial) {
    Times times(1 + rng() % 25);
    for (auto& x : times)
      if (rng() % 4) x = t(rng);
    const std::int64_t cutoff = 1 + static_cast<std::int64_t>(rng() % 2500);
    const double base = difficulty_area(times, cutoff);
    CHECK(base >= 0.0);
    CHECK(base <= static_cast<double>(cutoff) * times.size());
    auto slower = times;
    const auto k = rng() % slower.size();
    if (slower[k]) *slower[k] += 1 + static_cast<std::int64_t>(rng() % 500);
    CHECK(difficulty_area(slower, cutoff) >= base);
    slower[k] = std::nullopt;
    CHECK(difficulty_area(slower, cutoff) >= base);
  }
}

TEST_CASE("rescale keeps the per-problem mean") {
  DifficultyArea a{"x", "d", Level::Strips, SizeClass::Small, 3000.0, 30, kDefaultCutoffMs};
  const auto r = rescale(a, 20);
  CHECK(r.n_problems == 20);
  CHECK(r.area_ms == doctest::Approx(2000.0).epsilon(1e-15));
  CHECK(rescale(a, 30).area_ms == 3000.0);
}

TEST_CASE("mid-p percentile and classification tails") {
  const auto d = fixed_distribution({1, 2, 3, 4}, 2);
  CHECK(d.percentile(2.0) == 0.375);
  CHECK(d.percentile(0.5) == 0.0);
  CHECK(d.percentile(9.0) == 1.0);

  std::vector<double> grid(1000);
  for (int i = 0; i < 1000; ++i) grid[i] = i;
  const auto g = fixed_distribution(grid, 20);
  auto verdict = [&](double area) {
    return classify({"x", "d", Level::Strips, SizeClass::Small, area, 20, kDefaultCutoffMs}, g).classification;
  };
  CHECK(verdict(24.0) == Hardness::Easy);   // (24 + 0.5) / 1000 = 0.0245
  CHECK(verdict(25.0) == Hardness::Neither);
  CHECK(verdict(975.0) == Hardness::Hard);  // (975 + 0.5) / 1000
  CHECK(verdict(974.0) == Hardness::Neither);
  CHECK(code_of([&] { classify({"x", "d", Level::Strips, SizeClass::Small, 1.0, 19, 10}, g); }) ==
        ErrorCode::SampleSizeMismatch);
}

TEST_CASE("degenerate pool: every sample equal, nothing classified") {
  const auto pool = BootstrapPool::from_times({}, {{50.0, 50.0}, {50.0}}, 100);
  const auto dist = resample(pool, {200, 4, 100, 9, 1});
  CHECK(dist.sorted.front() == 200.0);
  CHECK(dist.sorted.back() == 200.0);
  const auto v = classify({"x", "d", Level::Strips, SizeClass::Small, 200.0, 4, 100}, dist);
  CHECK(v.percentile == 0.5);
  CHECK(v.classification == Hardness::Neither);
  CHECK(code_of([] { BootstrapPool::from_times({}, {}, 10); }) == ErrorCode::EmptyPool);
  CHECK(code_of([] { BootstrapPool::from_times({}, {{}}, 10); }) == ErrorCode::EmptyPool);
}

TEST_CASE("bootstrap frequencies match enumeration on a two-problem pool") {
  // one planner, times 0 and 1, m = 2: area 0, 1, 2 with probability 1/4, 1/2, 1/4
  const auto pool = BootstrapPool::from_times({}, {{0.0}, {1.0}}, 10);
  const int B = 40000;
  const auto dist = resample(pool, {B, 2, 10, 12345, 1});
  std::map<double, int> counts;
  for (double a : dist.samples) ++counts[a];
  REQUIRE(counts.size() == 3);
  const double expected[] = {0.25, 0.5, 0.25};
  double chi2 = 0.0;
  int k = 0;
  for (const auto& [area, count] : counts) {
    CHECK(area == static_cast<double>(k));
    const double e = expected[k++] * B;
    chi2 += (count - e) * (count - e) / e;
  }
  CHECK(chi2 < 13.82);  // chi-square(2) upper 0.001 point
}

TEST_CASE("bootstrap output does not depend on the thread count") {
  std::vector<std::vector<double>> times;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 97; ++i) times.push_back({double(rng() % 5000), double(rng() % 5000), double(rng() % 9000)});
  const auto pool = BootstrapPool::from_times({}, times, 6000);
  const auto one = resample(pool, {5000, 20, 6000, 42, 1});
  for (unsigned threads : {2U, 3U, 8U, 64U}) {
    const auto many = resample(pool, {5000, 20, 6000, 42, threads});
    CHECK(many.samples == one.samples);
    CHECK(many.sorted == one.sorted);
  }
  CHECK(resample(pool, {5000, 20, 6000, 43, 1}).samples != one.samples);
  CHECK(code_of([&] { resample(pool, {0, 20, 6000, 1, 1}); }) == ErrorCode::DomainError);
}

TEST_CASE("pool construction follows category, level and attempts") {
  testkit::Builder b;
  b.planner("auto1", Category::FullyAutomated, {Level::Strips, Level::Numeric})
      .planner("auto2", Category::FullyAutomated, {Level::Strips})
      .planner("hand", Category::HandCoded, {Level::Strips})
      .set("d", Level::Strips, 3)
      .set("e", Level::Numeric, 2)
      .set("big", Level::Strips, 2, SizeClass::Large, QualityDirection::Minimize, 3)
      .solved("auto1", "d", Level::Strips, "p001", 10)
      .solved("auto1", "e", Level::Numeric, "p001", 10)
      .solved("hand", "d", Level::Strips, "p001", 1);
  const auto data = b.build();
  const auto strips = BootstrapPool::build(data, {PoolKind::LevelSpecific, Level::Strips}, 100);
  CHECK(strips.problem_count() == 3);
  const auto all = BootstrapPool::build(data, {PoolKind::LevelIndependent}, 100);
  CHECK(all.problem_count() == 5);
  CHECK(code_of([&] {
          BootstrapPool::build(data, {PoolKind::LevelSpecific, Level::Time}, 100);
        }) == ErrorCode::EmptyPool);
  CHECK(code_of([&] {
          BootstrapPool::build(data, {PoolKind::LevelSpecific, Level::Strips, Category::FullyAutomated,
                                      SizeClass::Large},
                               100);
        }) == ErrorCode::EmptyPool);
}

TEST_CASE("planted easy and hard domains are found") {
  const auto data = planted_dataset();
  BootstrapParams params{4000, 20, kDefaultCutoffMs, 7, 2};
  for (auto pool : {PoolKind::LevelSpecific, PoolKind::LevelIndependent}) {
    const auto table = hardness_table(data, Category::FullyAutomated, pool, SizeClass::Small, params);
    REQUIRE(table.cells.size() == 4);
    std::map<std::string, HardnessCell> by_domain;
    for (const auto& c : table.cells) by_domain[c.domain] = c;
    CHECK(by_domain["quick"].easy == 3);
    CHECK(by_domain["quick"].hard == 0);
    CHECK(by_domain["stuck"].hard == 3);
    CHECK(by_domain["stuck"].easy == 0);
    CHECK(by_domain["mid1"].planners == 3);
    CHECK(table.verdicts.size() == 12);
    for (const auto& v : table.notable()) CHECK((v.percentile <= 0.05 || v.percentile >= 0.95));
    CHECK(table.notable().size() >= 6);
  }
  const auto again = hardness_table(data, Category::FullyAutomated, PoolKind::LevelSpecific, SizeClass::Small,
                                    {4000, 20, kDefaultCutoffMs, 7, 1});
  const auto first = hardness_table(data, Category::FullyAutomated, PoolKind::LevelSpecific, SizeClass::Small,
                                    params);
  REQUIRE(again.verdicts.size() == first.verdicts.size());
  for (std::size_t i = 0; i < again.verdicts.size(); ++i)
    CHECK(again.verdicts[i].percentile == first.verdicts[i].percentile);
  CHECK(again.pool_seeds == first.pool_seeds);

  // no hand-coded planners: nothing to report
  CHECK(hardness_table(data, Category::HandCoded, PoolKind::LevelSpecific, SizeClass::Small, params).cells.empty());
}

TEST_CASE("pool seeds differ per pool") {
  const PoolSpec a{PoolKind::LevelSpecific, Level::Strips};
  const PoolSpec b{PoolKind::LevelSpecific, Level::Numeric};
  const PoolSpec c{PoolKind::LevelIndependent};
  CHECK(pool_seed(3, a) != pool_seed(3, b));
  CHECK(pool_seed(3, a) != pool_seed(3, c));
  CHECK(pool_seed(3, a) == pool_seed(3, a));
  CHECK(pool_seed(3, a) != pool_seed(4, a));
}
