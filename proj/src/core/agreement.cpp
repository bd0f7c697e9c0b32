#include "plancomp/agreement.hpp"

#include "plancomp/error.hpp"

namespace plancomp {

namespace {

const ProblemSet& require_set(const Dataset& data, const std::string& domain, Level level, SizeClass size) {
  const auto* set = data.manifest().find_set(domain, level, size);
  if (!set)
    throw Error(ErrorCode::UnknownCell, "no " + std::string(to_string(size)) + " problem set for " + domain + "/" +
                                            std::string(to_string(level)));
  return *set;
}

}  // namespace

RankVector judge_ranks(const Dataset& data, const std::string& planner, const std::string& domain, Level level,
                       SizeClass size) {
  const auto* entry = data.manifest().find_planner(planner);
  if (!entry || !entry->entered(level))
    throw Error(ErrorCode::PlannerNotInLevel,
                "planner " + planner + " did not enter level " + std::string(to_string(level)));
  const auto& set = require_set(data, domain, level, size);
  std::vector<Score> times;
  times.reserve(set.problems.size());
  for (const auto& problem : set.problems) {
    const auto* r = data.find(planner, domain, level, problem);
    times.push_back(r && r->solved ? Score::of(static_cast<double>(*r->time_ms)) : Score::worst());
  }
  return rank_ascending(times);
}

AgreementResult agreement_test(const Dataset& data, const std::string& domain, Level level, SizeClass size,
                               Category category, double alpha) {
  const auto& set = require_set(data, domain, level, size);
  AgreementResult result;
  result.domain = domain;
  result.level = level;
  result.size = size;
  result.category = category;
  result.k = static_cast<int>(set.problems.size());

  std::vector<RankVector> rows;
  for (const auto* p : data.manifest().planners_in(category)) {
    if (!p->entered(level)) continue;
    const auto attempted = data.attempted(p->name, set);
    if (attempted == 0) continue;
    if (2 * attempted < set.problems.size()) {
      result.excluded.push_back(p->name);
      continue;
    }
    result.judges.push_back(p->name);
    rows.push_back(judge_ranks(data, p->name, domain, level, size));
  }
  if (rows.size() < 2)
    throw Error(ErrorCode::TooFewJudges, "agreement at " + domain + "/" + std::string(to_string(level)) + " has " +
                                             std::to_string(rows.size()) + " judge(s)");
  result.mrc = mrc_test(rows);
  result.significant = result.mrc.p.value() <= alpha;
  return result;
}

std::vector<AgreementResult> agreement_table(const Dataset& data, Category category, SizeClass size, double alpha) {
  std::vector<AgreementResult> grid;
  for (auto level : kAllLevels) {
    for (const auto* set : data.manifest().sets_at(level, size)) {
      try {
        grid.push_back(agreement_test(data, set->domain, level, size, category, alpha));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooFewJudges) throw;
      }
    }
  }
  return grid;
}

}  // namespace plancomp
