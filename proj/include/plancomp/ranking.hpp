#pragma once

#include <compare>
#include <span>
#include <vector>

namespace plancomp {

// An observation that is either a finite value or the distinguished Worst
// element. Worst is greater than every finite value and equal to itself, so
// unsolved instances sort to the top end without arithmetic on infinities.
class Score {
 public:
  constexpr Score() = default;

  static constexpr Score of(double value) { return Score(value, false); }
  static constexpr Score worst() { return Score(0.0, true); }

  constexpr bool is_worst() const { return worst_; }
  // Only meaningful when !is_worst().
  constexpr double value() const { return value_; }

  friend constexpr std::partial_ordering operator<=>(const Score& a, const Score& b) {
    if (a.worst_ || b.worst_) return a.worst_ <=> b.worst_;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const Score& a, const Score& b) { return (a <=> b) == 0; }

 private:
  constexpr Score(double value, bool worst) : value_(value), worst_(worst) {}

  double value_ = 0.0;
  bool worst_ = false;
};

// Ranks parallel to the input; 1 = smallest; ties share the mean of the
// positions they span.
using RankVector = std::vector<double>;

RankVector rank_ascending(std::span<const Score> values);
RankVector rank_ascending(std::span<const double> values);

}  // namespace plancomp
