#pragma once

#include <span>
#include <utility>
#include <vector>

#include "plancomp/distributions.hpp"
#include "plancomp/ranking.hpp"

namespace plancomp {

enum class Favored { First, Second, None };

Favored mirror(Favored favored) noexcept;

struct WilcoxonResult {
  int n_input = 0;
  int n_effective = 0;
  double rank_sum_pos = 0.0;  // rank mass of positive differences (First's wins)
  double rank_sum_neg = 0.0;
  double T = 0.0;             // min(rank_sum_pos, rank_sum_neg)
  double z = 0.0;             // (m(m+1)/4 - T) / sigma, no correction
  double z_corrected = 0.0;   // same with a 0.5 continuity correction; drives p
  Probability p_two_sided{1.0};
  Favored favored = Favored::None;
};

// Matched-pairs signed-rank test over signed differences. Positive entries
// are wins for First. Infinite differences (an unsolved side) tie at the top
// of the magnitude ranking. Zero differences are dropped.
WilcoxonResult wilcoxon_matched_pairs(std::span<const double> differences);

// Exact two-sided p = P(min(W+, W-) <= T) over all 2^m sign assignments of
// the observed magnitude ranks. Requires m <= 20.
Probability wilcoxon_exact_p(std::span<const double> differences);

struct ProportionResult {
  int wins = 0;
  int n = 0;
  double z = 0.0;  // signed: positive when wins > n/2
  Probability p_two_sided{1.0};
};

// Z-test for a proportion against 0.5.
ProportionResult proportion_test(int wins, int n);

struct PairedTResult {
  int n = 0;
  int df = 0;
  double mean_first_norm = 1.0;
  double mean_second_norm = 1.0;
  double d_bar = 0.0;
  double s = 0.0;
  double t = 0.0;  // +-infinity when s == 0 and d_bar != 0
  Probability p_two_sided{1.0};
};

// Paired t-test after dividing each pair by its own mean, so each pair maps
// into (0, 2) and sums to 2. Negative t favours First.
PairedTResult paired_t_normalized(std::span<const std::pair<double, double>> pairs);

struct SpearmanResult {
  int n = 0;
  double R = 0.0;    // sum of squared rank differences
  double rho = 0.0;  // 1 - 6R / (n(n^2-1)) without ties; 1 - R / (Sxx + Syy) in general
  double z = 0.0;    // -rho sqrt(n-1); 0 when both rankings are constant
  Probability p_two_sided{1.0};
  bool small_sample = false;  // n < 10: normal approximation unreliable
};

SpearmanResult spearman_test(std::span<const double> x_ranks, std::span<const double> y_ranks);

struct MrcResult {
  int n_judges = 0;
  int k_subjects = 0;
  double S = 0.0;
  double S_D = 0.0;
  double D1 = 0.0;
  double D2 = 0.0;
  double S1_sq = 0.0;
  double S2_sq = 0.0;
  double F = 0.0;  // +infinity when D2 == 0 and D1 > 0
  int df1 = 0;
  int df2 = 0;
  Probability p{1.0};
};

// Rank correlation test for agreement among several judges. Each row is one
// judge's ranking of the same k subjects (mid-rank ties allowed).
MrcResult mrc_test(const std::vector<RankVector>& rank_matrix);

}  // namespace plancomp
