#include "plancomp/scaling.hpp"

#include <algorithm>

#include "plancomp/error.hpp"

namespace plancomp {

DomainVerdicts domain_verdicts(const HardnessTable& table, const std::string& planner, Level level) {
  DomainVerdicts out;
  for (const auto& v : table.verdicts)
    if (v.planner == planner && v.level == level) out[v.domain] = v.classification;
  return out;
}

std::vector<std::string> eligible_domains(const DomainVerdicts& a, const DomainVerdicts& b) {
  std::vector<std::string> out;
  for (const auto& [domain, verdict] : a) {
    auto it = b.find(domain);
    if (it != b.end() && it->second == verdict) out.push_back(domain);
  }
  return out;
}

namespace {

std::vector<Score> pooled_times(const Dataset& data, const std::string& planner, Level level,
                                const std::vector<std::pair<std::string, std::string>>& problems) {
  std::vector<Score> times;
  times.reserve(problems.size());
  for (const auto& [domain, problem] : problems) {
    const auto* r = data.find(planner, domain, level, problem);
    times.push_back(r && r->solved ? Score::of(static_cast<double>(*r->time_ms)) : Score::worst());
  }
  return times;
}

double capped_time(const Dataset& data, const std::string& planner, Level level, const std::string& domain,
                   const std::string& problem, std::int64_t cutoff_ms) {
  const auto* r = data.find(planner, domain, level, problem);
  return static_cast<double>(r && r->solved ? std::min(*r->time_ms, cutoff_ms) : cutoff_ms);
}

bool constant(const RankVector& ranks) {
  return std::adjacent_find(ranks.begin(), ranks.end(), std::not_equal_to<>()) == ranks.end();
}

bool has_records(const Dataset& data, const std::string& planner, Level level, SizeClass size) {
  for (const auto* set : data.manifest().sets_at(level, size))
    if (data.attempted(planner, *set) > 0) return true;
  return false;
}

}  // namespace

std::string_view to_string(ScalingVerdict v) noexcept {
  switch (v) {
    case ScalingVerdict::AScalesBetter: return "a-scales-better";
    case ScalingVerdict::BScalesBetter: return "b-scales-better";
    case ScalingVerdict::NoDifference: return "no-difference";
    case ScalingVerdict::NoSharedTrack: return "incomparable-no-shared-track";
    case ScalingVerdict::InsufficientAgreement: return "incomparable-insufficient-agreement";
  }
  return "?";
}

DifficultyRanking difficulty_ranking(const Dataset& data, Level level, const std::vector<std::string>& domains,
                                     Category category, SizeClass size) {
  if (domains.empty()) throw Error(ErrorCode::EmptyDomainList, "difficulty_ranking: no domains");
  DifficultyRanking out;
  std::vector<const ProblemSet*> sets;
  for (const auto& domain : domains) {
    const auto* set = data.manifest().find_set(domain, level, size);
    if (!set)
      throw Error(ErrorCode::UnknownCell, "no " + std::string(to_string(size)) + " problem set for " + domain + "/" +
                                              std::string(to_string(level)));
    sets.push_back(set);
    for (const auto& problem : set->problems) out.problems.emplace_back(domain, problem);
  }

  out.mean_rank.assign(out.problems.size(), 0.0);
  for (const auto* p : data.manifest().planners_in(category)) {
    if (!p->entered(level)) continue;
    if (std::none_of(sets.begin(), sets.end(), [&](const ProblemSet* s) { return data.attempted(p->name, *s) > 0; }))
      continue;
    out.judges.push_back(p->name);
    const auto ranks = rank_ascending(pooled_times(data, p->name, level, out.problems));
    for (std::size_t i = 0; i < ranks.size(); ++i) out.mean_rank[i] += ranks[i];
  }
  if (out.judges.empty()) {
    // Nobody to judge: every problem ties.
    out.ranks.assign(out.problems.size(), 0.5 * static_cast<double>(out.problems.size() + 1));
    return out;
  }
  for (auto& r : out.mean_rank) r /= static_cast<double>(out.judges.size());
  out.ranks = rank_ascending(std::span<const double>(out.mean_rank));
  return out;
}

ScalingResult scaling_comparison(const Dataset& data, const std::string& a, const std::string& b, Level level,
                                 const HardnessTable& hardness, Category category, SizeClass size,
                                 const ScalingOptions& options) {
  ScalingResult result;
  result.planner_a = a;
  result.planner_b = b;
  result.level = level;

  for (const auto& name : {a, b}) {
    const auto* entry = data.manifest().find_planner(name);
    if (!entry || !entry->entered(level) || !has_records(data, name, level, size)) {
      result.verdict = ScalingVerdict::NoSharedTrack;
      return result;
    }
  }

  result.domains = eligible_domains(domain_verdicts(hardness, a, level), domain_verdicts(hardness, b, level));
  if (result.domains.size() < 2) {
    result.verdict = ScalingVerdict::InsufficientAgreement;
    return result;
  }

  const auto difficulty = difficulty_ranking(data, level, result.domains, category, size);
  result.n = static_cast<int>(difficulty.problems.size());

  if (options.require_ranking_agreement) {
    const auto own_a = rank_ascending(pooled_times(data, a, level, difficulty.problems));
    const auto own_b = rank_ascending(pooled_times(data, b, level, difficulty.problems));
    const auto check = spearman_test(own_a, own_b);
    if (constant(own_a) || constant(own_b) || !(check.rho > 0.0 && check.p_two_sided.value() <= options.alpha)) {
      result.verdict = ScalingVerdict::InsufficientAgreement;
      return result;
    }
  }

  std::vector<double> differences;
  differences.reserve(difficulty.problems.size());
  for (const auto& [domain, problem] : difficulty.problems)
    differences.push_back(capped_time(data, a, level, domain, problem, options.cutoff_ms) -
                          capped_time(data, b, level, domain, problem, options.cutoff_ms));
  const auto difference_ranks = rank_ascending(std::span<const double>(differences));

  result.spearman = spearman_test(difficulty.ranks, difference_ranks);
  if (constant(difficulty.ranks) || constant(difference_ranks)) {
    // No variation on one side: the rank-sum formula is meaningless, report no correlation.
    result.degenerate = true;
    result.spearman.rho = 0.0;
    result.spearman.z = 0.0;
    result.spearman.p_two_sided = Probability(1.0);
  }

  if (result.spearman.p_two_sided.value() > options.alpha) {
    result.verdict = ScalingVerdict::NoDifference;
  } else {
    // Positive correlation: a - b grows with difficulty, so b scales better.
    result.verdict = result.spearman.rho > 0.0 ? ScalingVerdict::BScalesBetter : ScalingVerdict::AScalesBetter;
  }
  return result;
}

}  // namespace plancomp
