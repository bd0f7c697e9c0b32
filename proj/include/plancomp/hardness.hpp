#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/rng.hpp"

namespace plancomp {

inline constexpr std::int64_t kDefaultCutoffMs = 1'800'000;  // thirty minutes

// Area under "problems left to solve" against time, up to the cutoff:
// sum of min(t_i, cutoff) with unsolved (nullopt) counted as the cutoff.
double difficulty_area(std::span<const std::optional<std::int64_t>> times, std::int64_t cutoff_ms);

struct DifficultyArea {
  std::string planner;
  std::string domain;
  Level level = Level::Strips;
  SizeClass size = SizeClass::Small;
  double area_ms = 0.0;
  int n_problems = 0;
  std::int64_t cutoff_ms = kDefaultCutoffMs;
};

// The planner's area over one problem set; unattempted problems count as unsolved.
DifficultyArea subject_area(const Dataset& data, const std::string& planner, const ProblemSet& set,
                            std::int64_t cutoff_ms);

// Same area expressed over m problems (scaled by m / n_problems).
DifficultyArea rescale(const DifficultyArea& area, int m);

enum class PoolKind { LevelSpecific, LevelIndependent };
std::string_view to_string(PoolKind kind) noexcept;

struct PoolSpec {
  PoolKind kind = PoolKind::LevelSpecific;
  Level level = Level::Strips;  // ignored for LevelIndependent
  Category category = Category::FullyAutomated;
  SizeClass size = SizeClass::Small;
};

// The problems a bootstrap sample can draw from, each with the cutoff-clamped
// times of the category planners that competed in its domain and level.
class BootstrapPool {
 public:
  static BootstrapPool build(const Dataset& data, const PoolSpec& spec, std::int64_t cutoff_ms);
  // For tests and synthetic pools: one inner vector of candidate times per problem.
  static BootstrapPool from_times(PoolSpec spec, std::vector<std::vector<double>> times, std::int64_t cutoff_ms);

  const PoolSpec& spec() const noexcept { return spec_; }
  std::int64_t cutoff_ms() const noexcept { return cutoff_ms_; }
  std::size_t problem_count() const noexcept { return times_.size(); }

  // One sample area: m problems with replacement, one random planner each.
  double draw_area(SplitMix64& rng, int m) const;

 private:
  PoolSpec spec_;
  std::int64_t cutoff_ms_ = kDefaultCutoffMs;
  std::vector<std::vector<double>> times_;
};

struct BootstrapParams {
  int B = 10000;
  int m = 20;
  std::int64_t cutoff_ms = kDefaultCutoffMs;
  std::uint64_t seed = 3;
  unsigned threads = 1;
};

struct BootstrapDistribution {
  PoolSpec pool;
  std::vector<double> samples;  // in sample-index order
  std::vector<double> sorted;
  int B = 0;
  int m = 0;
  std::int64_t cutoff_ms = kDefaultCutoffMs;
  std::uint64_t seed = 0;
  std::string rng = SplitMix64::kName;

  // Mid-p: (#below + 0.5 #equal) / B.
  double percentile(double area) const;
};

// Sample i always uses SplitMix64::stream(seed, i); output is identical for any thread count.
BootstrapDistribution resample(const BootstrapPool& pool, const BootstrapParams& params);
BootstrapDistribution bootstrap_distribution(const Dataset& data, const PoolSpec& spec,
                                             const BootstrapParams& params);

enum class Hardness { Easy, Hard, Neither };
std::string_view to_string(Hardness h) noexcept;

inline constexpr double kEasyTail = 0.025;
inline constexpr double kHardTail = 0.975;

struct HardnessVerdict {
  std::string planner;
  std::string domain;
  Level level = Level::Strips;
  SizeClass size = SizeClass::Small;
  PoolKind pool = PoolKind::LevelSpecific;
  double area_ms = 0.0;  // as classified (rescaled to m problems)
  double percentile = 0.5;
  Hardness classification = Hardness::Neither;
};

// Requires area.n_problems == dist.m.
HardnessVerdict classify(const DifficultyArea& area, const BootstrapDistribution& dist);

struct HardnessCell {
  std::string domain;
  Level level = Level::Strips;
  SizeClass size = SizeClass::Small;
  int planners = 0;
  int easy = 0;
  int hard = 0;
};

struct HardnessTable {
  PoolKind pool = PoolKind::LevelSpecific;
  Category category = Category::FullyAutomated;
  SizeClass size = SizeClass::Small;
  std::vector<HardnessCell> cells;         // manifest order
  std::vector<HardnessVerdict> verdicts;   // every classified subject
  std::vector<std::uint64_t> pool_seeds;   // seed used per distribution, in level order

  // Verdicts with percentile <= 0.05 or >= 0.95, as listed per planner.
  std::vector<HardnessVerdict> notable() const;
};

// Seed for the distribution of one pool inside a table, derived from the base seed.
std::uint64_t pool_seed(std::uint64_t base_seed, const PoolSpec& spec);

HardnessTable hardness_table(const Dataset& data, Category category, PoolKind pool, SizeClass size,
                             const BootstrapParams& params);

}  // namespace plancomp
