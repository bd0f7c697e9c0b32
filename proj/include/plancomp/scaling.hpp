#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/hardness.hpp"
#include "plancomp/ranking.hpp"
#include "plancomp/stattests.hpp"

namespace plancomp {

// Domain -> classification for one planner at one level.
using DomainVerdicts = std::map<std::string, Hardness>;

DomainVerdicts domain_verdicts(const HardnessTable& table, const std::string& planner, Level level);

// Domains where both planners reached the same classification (sorted).
std::vector<std::string> eligible_domains(const DomainVerdicts& a, const DomainVerdicts& b);

struct DifficultyRanking {
  std::vector<std::pair<std::string, std::string>> problems;  // (domain, problem), pooled in domain order
  std::vector<std::string> judges;
  std::vector<double> mean_rank;  // per problem, mean over judges of the judge's rank in the pool
  RankVector ranks;               // ranks of mean_rank, ascending = easier
};

// Pools the problems of `domains` at the level; every category planner that
// entered the level and attempted something in the pool ranks the pooled
// problems by solve time (unsolved at the top); problems are then ranked by
// their mean judge rank.
DifficultyRanking difficulty_ranking(const Dataset& data, Level level, const std::vector<std::string>& domains,
                                     Category category, SizeClass size);

enum class ScalingVerdict { AScalesBetter, BScalesBetter, NoDifference, NoSharedTrack, InsufficientAgreement };

std::string_view to_string(ScalingVerdict v) noexcept;

struct ScalingOptions {
  double alpha = 0.05;
  std::int64_t cutoff_ms = kDefaultCutoffMs;
  // Also require the two planners' own problem rankings to correlate
  // positively at alpha before comparing.
  bool require_ranking_agreement = false;
};

struct ScalingResult {
  std::string planner_a;
  std::string planner_b;
  Level level = Level::Strips;
  std::vector<std::string> domains;
  int n = 0;
  SpearmanResult spearman;  // difficulty ranks vs ranks of (time_a - time_b)
  ScalingVerdict verdict = ScalingVerdict::NoSharedTrack;
  bool degenerate = false;  // a rank vector was constant; correlation reported as 0

  bool comparable() const {
    return verdict != ScalingVerdict::NoSharedTrack && verdict != ScalingVerdict::InsufficientAgreement;
  }
};

// `hardness` supplies the level-specific verdicts used to pick domains.
ScalingResult scaling_comparison(const Dataset& data, const std::string& a, const std::string& b, Level level,
                                 const HardnessTable& hardness, Category category, SizeClass size,
                                 const ScalingOptions& options = {});

}  // namespace plancomp
