#include "plancomp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plancomp/error.hpp"

namespace plancomp {

RankVector rank_ascending(std::span<const Score> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "rank_ascending: no values");
  for (const auto& v : values)
    if (!v.is_worst() && std::isnan(v.value())) throw Error(ErrorCode::NonFiniteInput, "rank_ascending: NaN value");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  RankVector ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) hold ranks i+1..j
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

RankVector rank_ascending(std::span<const double> values) {
  std::vector<Score> scores;
  scores.reserve(values.size());
  for (double v : values) scores.push_back(Score::of(v));
  return rank_ascending(scores);
}

}  // namespace plancomp
