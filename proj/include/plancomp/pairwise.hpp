#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/ranking.hpp"
#include "plancomp/stattests.hpp"

namespace plancomp {

enum class PairingMode { AtLeastOne, DoubleHits };
enum class Measure { Speed, QualityMetric, QualitySeq, QualityConc };

std::string_view to_string(PairingMode mode) noexcept;
// "speed", "metric", "seq", "conc"
std::string_view to_string(Measure measure) noexcept;
std::optional<Measure> parse_measure(std::string_view text);

// Quality measures the level is analysed under: seq and conc for Strips,
// the plan metric elsewhere.
std::vector<Measure> default_quality_measures(Level level);

// The raw observation of `measure` on a record; nullopt when unsolved or the
// field is missing.
std::optional<double> measure_value(const RunRecord& record, Measure measure);

struct ScorePair {
  Score a;
  Score b;
};

struct PairQuery {
  std::string a;
  std::string b;
  Level level = Level::Strips;
  Measure measure = Measure::Speed;
  PairingMode mode = PairingMode::AtLeastOne;
  SizeClass size = SizeClass::Small;
};

// Smaller is always better in the returned scores: maximize-direction
// metrics are negated, and an unsolved side (or a solved run missing the
// measured field) is Worst.
std::vector<ScorePair> build_pairs(const Dataset& data, const PairQuery& query);

// Signed differences value_b - value_a; positive = a better. Worst vs finite
// gives +-infinity, Worst vs Worst gives 0.
std::vector<double> pair_differences(const std::vector<ScorePair>& pairs);

inline constexpr int kMinComparisonSample = 6;

struct ComparisonResult {
  std::string planner_a;
  std::string planner_b;
  Level level = Level::Strips;
  Measure measure = Measure::Speed;
  PairingMode mode = PairingMode::AtLeastOne;
  SizeClass size = SizeClass::Small;
  int n = 0;
  WilcoxonResult wilcoxon;
  ProportionResult proportion;  // ties excluded from wins and n
  std::optional<double> significant_at;
  bool too_small = false;  // n < kMinComparisonSample: reported, never ordered

  // Winner by rank mass, if any.
  std::optional<std::string> favored_planner() const;
  // Winner by win count, if any.
  std::optional<std::string> proportion_leader() const;
};

ComparisonResult compare(const Dataset& data, const PairQuery& query, double alpha = 0.001);

struct MagnitudeResult {
  std::string planner_a;
  std::string planner_b;
  Level level = Level::Strips;
  Measure measure = Measure::Speed;
  SizeClass size = SizeClass::Small;
  int n = 0;
  int n_excluded = 0;  // double hits dropped for a non-positive raw value
  PairedTResult t_result;
};

// Paired t-test on normalised raw values over double hits only.
MagnitudeResult magnitude(const Dataset& data, const PairQuery& query);

// 1 - family_confidence^(1/comparisons).
double transitive_alpha(double family_confidence, int comparisons);

}  // namespace plancomp
