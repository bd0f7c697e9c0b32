#include "plancomp/pairwise.hpp"

#include <cmath>
#include <limits>

#include "plancomp/error.hpp"

namespace plancomp {

std::string_view to_string(PairingMode mode) noexcept {
  return mode == PairingMode::AtLeastOne ? "at-least-one" : "double-hits";
}

std::string_view to_string(Measure measure) noexcept {
  switch (measure) {
    case Measure::Speed: return "speed";
    case Measure::QualityMetric: return "metric";
    case Measure::QualitySeq: return "seq";
    case Measure::QualityConc: return "conc";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  for (auto m : {Measure::Speed, Measure::QualityMetric, Measure::QualitySeq, Measure::QualityConc})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::vector<Measure> default_quality_measures(Level level) {
  if (level == Level::Strips) return {Measure::QualitySeq, Measure::QualityConc};
  return {Measure::QualityMetric};
}

std::optional<double> measure_value(const RunRecord& record, Measure measure) {
  if (!record.solved) return std::nullopt;
  switch (measure) {
    case Measure::Speed:
      if (record.time_ms) return static_cast<double>(*record.time_ms);
      return std::nullopt;
    case Measure::QualityMetric: return record.metric_value;
    case Measure::QualitySeq:
      if (record.seq_length) return static_cast<double>(*record.seq_length);
      return std::nullopt;
    case Measure::QualityConc:
      if (record.conc_length) return static_cast<double>(*record.conc_length);
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void require_entered(const Manifest& manifest, const std::string& planner, Level level) {
  const auto* entry = manifest.find_planner(planner);
  if (!entry || !entry->entered(level))
    throw Error(ErrorCode::PlannerNotInLevel,
                "planner " + planner + " did not enter level " + std::string(to_string(level)));
}

// Calls fn(a_record, b_record, set) for every problem at the query's level and size.
template <typename Fn>
void for_each_problem(const Dataset& data, const PairQuery& q, Fn&& fn) {
  require_entered(data.manifest(), q.a, q.level);
  require_entered(data.manifest(), q.b, q.level);
  const auto sets = data.manifest().sets_at(q.level, q.size);
  if (sets.empty())
    throw Error(ErrorCode::NoProblems, "no " + std::string(to_string(q.size)) + " problem sets at level " +
                                           std::string(to_string(q.level)));
  for (const auto* set : sets)
    for (const auto& problem : set->problems)
      fn(data.find(q.a, set->domain, q.level, problem), data.find(q.b, set->domain, q.level, problem), *set);
}

}  // namespace

std::vector<ScorePair> build_pairs(const Dataset& data, const PairQuery& q) {
  std::vector<ScorePair> pairs;
  for_each_problem(data, q, [&](const RunRecord* ra, const RunRecord* rb, const ProblemSet& set) {
    const bool solved_a = ra && ra->solved;
    const bool solved_b = rb && rb->solved;
    if (!solved_a && !solved_b) return;
    const auto va = solved_a ? measure_value(*ra, q.measure) : std::nullopt;
    const auto vb = solved_b ? measure_value(*rb, q.measure) : std::nullopt;
    if (q.mode == PairingMode::DoubleHits && (!va || !vb)) return;

    const double sign =
        q.measure == Measure::QualityMetric && set.quality_direction == QualityDirection::Maximize ? -1.0 : 1.0;
    auto score = [sign](const std::optional<double>& v) { return v ? Score::of(sign * *v) : Score::worst(); };
    pairs.push_back({score(va), score(vb)});
  });
  return pairs;
}

std::vector<double> pair_differences(const std::vector<ScorePair>& pairs) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a.is_worst() && b.is_worst()) {
      diffs.push_back(0.0);
    } else if (a.is_worst()) {
      diffs.push_back(-inf);
    } else if (b.is_worst()) {
      diffs.push_back(inf);
    } else {
      diffs.push_back(b.value() - a.value());
    }
  }
  return diffs;
}

std::optional<std::string> ComparisonResult::favored_planner() const {
  switch (wilcoxon.favored) {
    case Favored::First: return planner_a;
    case Favored::Second: return planner_b;
    case Favored::None: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::string> ComparisonResult::proportion_leader() const {
  if (proportion.n == 0 || 2 * proportion.wins == proportion.n) return std::nullopt;
  return 2 * proportion.wins > proportion.n ? planner_a : planner_b;
}

ComparisonResult compare(const Dataset& data, const PairQuery& query, double alpha) {
  const auto pairs = build_pairs(data, query);
  const auto diffs = pair_differences(pairs);

  ComparisonResult r;
  r.planner_a = query.a;
  r.planner_b = query.b;
  r.level = query.level;
  r.measure = query.measure;
  r.mode = query.mode;
  r.size = query.size;
  r.n = static_cast<int>(pairs.size());
  r.too_small = r.n < kMinComparisonSample;
  if (!diffs.empty()) r.wilcoxon = wilcoxon_matched_pairs(diffs);

  int wins = 0;
  int decided = 0;
  for (double d : diffs) {
    if (d == 0.0) continue;
    ++decided;
    if (d > 0.0) ++wins;
  }
  if (decided > 0) {
    r.proportion = proportion_test(wins, decided);
  } else {
    r.proportion = ProportionResult{};
  }
  if (!r.too_small && r.wilcoxon.favored != Favored::None && r.wilcoxon.p_two_sided.value() <= alpha)
    r.significant_at = alpha;
  return r;
}

MagnitudeResult magnitude(const Dataset& data, const PairQuery& query) {
  MagnitudeResult r;
  r.planner_a = query.a;
  r.planner_b = query.b;
  r.level = query.level;
  r.measure = query.measure;
  r.size = query.size;

  std::vector<std::pair<double, double>> values;
  for_each_problem(data, query, [&](const RunRecord* ra, const RunRecord* rb, const ProblemSet&) {
    if (!ra || !rb) return;
    const auto va = measure_value(*ra, query.measure);
    const auto vb = measure_value(*rb, query.measure);
    if (!va || !vb) return;
    if (*va <= 0.0 || *vb <= 0.0) {
      ++r.n_excluded;
      return;
    }
    values.emplace_back(*va, *vb);
  });
  r.n = static_cast<int>(values.size());
  r.t_result = paired_t_normalized(values);
  return r;
}

double transitive_alpha(double family_confidence, int comparisons) {
  if (!(family_confidence > 0.0 && family_confidence < 1.0) || comparisons < 1)
    throw Error(ErrorCode::DomainError, "transitive_alpha: need confidence in (0,1) and comparisons >= 1");
  return 1.0 - std::pow(family_confidence, 1.0 / comparisons);
}

}  // namespace plancomp
