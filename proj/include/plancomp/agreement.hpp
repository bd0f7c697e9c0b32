#pragma once

#include <string>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/ranking.hpp"
#include "plancomp/stattests.hpp"

namespace plancomp {

// The planner's ranking of a cell's problems by solve time. Unsolved and
// unattempted problems tie at the top.
RankVector judge_ranks(const Dataset& data, const std::string& planner, const std::string& domain, Level level,
                       SizeClass size);

struct AgreementResult {
  std::string domain;
  Level level = Level::Strips;
  SizeClass size = SizeClass::Small;
  Category category = Category::FullyAutomated;
  std::vector<std::string> judges;
  std::vector<std::string> excluded;  // attempted fewer than half the problems
  int k = 0;
  MrcResult mrc;
  bool significant = false;
};

// Judges are the category's planners that entered the level and attempted at
// least half of the cell's problems.
AgreementResult agreement_test(const Dataset& data, const std::string& domain, Level level, SizeClass size,
                               Category category, double alpha = 0.05);

// One result per (domain, level) set of the given size with at least two judges.
std::vector<AgreementResult> agreement_table(const Dataset& data, Category category, SizeClass size,
                                             double alpha = 0.05);

}  // namespace plancomp
