#include "plancomp/stattests.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "plancomp/error.hpp"

namespace plancomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SignedRanks {
  std::vector<double> ranks;  // rank of |d| among nonzero differences
  std::vector<bool> positive;
};

SignedRanks rank_magnitudes(std::span<const double> differences) {
  std::vector<Score> magnitudes;
  SignedRanks out;
  for (double d : differences) {
    if (std::isnan(d)) throw Error(ErrorCode::NonFiniteInput, "wilcoxon: NaN difference");
    if (d == 0.0) continue;
    magnitudes.push_back(std::isinf(d) ? Score::worst() : Score::of(std::fabs(d)));
    out.positive.push_back(d > 0.0);
  }
  if (!magnitudes.empty()) out.ranks = rank_ascending(magnitudes);
  return out;
}

}  // namespace

Favored mirror(Favored favored) noexcept {
  switch (favored) {
    case Favored::First: return Favored::Second;
    case Favored::Second: return Favored::First;
    case Favored::None: return Favored::None;
  }
  return Favored::None;
}

WilcoxonResult wilcoxon_matched_pairs(std::span<const double> differences) {
  if (differences.empty()) throw Error(ErrorCode::EmptyInput, "wilcoxon: no differences");
  const auto signed_ranks = rank_magnitudes(differences);

  WilcoxonResult r;
  r.n_input = static_cast<int>(differences.size());
  r.n_effective = static_cast<int>(signed_ranks.ranks.size());
  for (std::size_t i = 0; i < signed_ranks.ranks.size(); ++i)
    (signed_ranks.positive[i] ? r.rank_sum_pos : r.rank_sum_neg) += signed_ranks.ranks[i];
  if (r.n_effective == 0) return r;

  r.T = std::min(r.rank_sum_pos, r.rank_sum_neg);
  r.favored = r.rank_sum_pos > r.rank_sum_neg   ? Favored::First
              : r.rank_sum_pos < r.rank_sum_neg ? Favored::Second
                                                : Favored::None;
  const double m = r.n_effective;
  const double mean = m * (m + 1.0) / 4.0;
  const double sigma = std::sqrt(m * (m + 1.0) * (2.0 * m + 1.0) / 24.0);
  r.z = (mean - r.T) / sigma;
  r.z_corrected = std::max(0.0, mean - r.T - 0.5) / sigma;
  r.p_two_sided = two_sided_normal_p(r.z_corrected);
  return r;
}

Probability wilcoxon_exact_p(std::span<const double> differences) {
  const auto signed_ranks = rank_magnitudes(differences);
  const std::size_t m = signed_ranks.ranks.size();
  if (m > 20) throw Error(ErrorCode::TooLarge, "wilcoxon_exact_p: more than 20 nonzero differences");
  if (m == 0) return Probability(1.0);

  // Mid-ranks are multiples of 1/2, so doubled ranks are exact integers.
  std::vector<std::int64_t> doubled(m);
  std::int64_t total = 0;
  std::int64_t observed_pos = 0;
  for (std::size_t i = 0; i < m; ++i) {
    doubled[i] = std::llround(2.0 * signed_ranks.ranks[i]);
    total += doubled[i];
    if (signed_ranks.positive[i]) observed_pos += doubled[i];
  }
  const std::int64_t observed_t = std::min(observed_pos, total - observed_pos);

  // Gray-code walk over sign assignments: one sign flips per step.
  const std::uint64_t patterns = std::uint64_t{1} << m;
  std::uint64_t extreme = 0;
  std::int64_t pos = 0;
  std::uint64_t signs = 0;
  for (std::uint64_t i = 0;; ++i) {
    if (std::min(pos, total - pos) <= observed_t) ++extreme;
    if (i + 1 == patterns) break;
    const int bit = std::countr_zero(i + 1);
    signs ^= std::uint64_t{1} << bit;
    pos += (signs >> bit & 1U) ? doubled[bit] : -doubled[bit];
  }
  return Probability(static_cast<double>(extreme) / static_cast<double>(patterns));
}

ProportionResult proportion_test(int wins, int n) {
  if (n < 1 || wins < 0 || wins > n)
    throw Error(ErrorCode::DomainError, "proportion_test: need 0 <= wins <= n and n >= 1");
  ProportionResult r;
  r.wins = wins;
  r.n = n;
  // (wins/n - 1/2) / sqrt(1/(4n)) with an integer numerator, so swapping sides negates z exactly
  r.z = static_cast<double>(2 * wins - n) / std::sqrt(static_cast<double>(n));
  r.p_two_sided = two_sided_normal_p(r.z);
  return r;
}

PairedTResult paired_t_normalized(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) throw Error(ErrorCode::TooFewPairs, "paired t-test needs at least 2 pairs");
  for (const auto& [a, b] : pairs)
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw Error(ErrorCode::NonPositiveValue, "paired t-test values must be finite and strictly positive");

  const std::size_t n = pairs.size();
  std::vector<double> diffs(n);
  double sum_first = 0.0;
  double sum_second = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = pairs[i];
    const double mean = 0.5 * (a + b);
    const double first = a / mean;
    const double second = b / mean;
    sum_first += first;
    sum_second += second;
    diffs[i] = first - second;
  }

  PairedTResult r;
  r.n = static_cast<int>(n);
  r.df = r.n - 1;
  r.mean_first_norm = sum_first / n;
  r.mean_second_norm = sum_second / n;
  r.d_bar = r.mean_first_norm - r.mean_second_norm;
  double ss = 0.0;
  for (double d : diffs) ss += (d - r.d_bar) * (d - r.d_bar);
  r.s = std::sqrt(ss / (n - 1));

  // Differences live in (-2, 2); below this spread they are equal up to round-off.
  constexpr double kZeroSpread = 1e-12;
  if (r.s <= kZeroSpread) {
    r.s = 0.0;
    if (std::fabs(r.d_bar) <= kZeroSpread) {
      r.t = 0.0;
      r.p_two_sided = Probability(1.0);
    } else {
      r.t = r.d_bar > 0 ? kInf : -kInf;
      r.p_two_sided = Probability(0.0);
    }
    return r;
  }
  r.t = r.d_bar / (r.s / std::sqrt(static_cast<double>(n)));
  r.p_two_sided = two_sided_t_p(r.t, r.df);
  return r;
}

SpearmanResult spearman_test(std::span<const double> x_ranks, std::span<const double> y_ranks) {
  if (x_ranks.size() != y_ranks.size())
    throw Error(ErrorCode::LengthMismatch, "spearman_test: rank vectors differ in length");
  if (x_ranks.empty()) throw Error(ErrorCode::EmptyInput, "spearman_test: no observations");
  if (x_ranks.size() < 2) throw Error(ErrorCode::DomainError, "spearman_test: need at least 2 observations");

  SpearmanResult r;
  r.n = static_cast<int>(x_ranks.size());
  const double n = r.n;
  const double centre = 0.5 * (n + 1.0);
  // Sum of squared deviations of both rankings from the mean rank. Equals
  // n(n^2-1)/6 without ties; with mid-rank ties it shrinks, and using it in
  // place of n(n^2-1)/6 keeps reversal an exact negation.
  double spread = 0.0;
  for (std::size_t i = 0; i < x_ranks.size(); ++i) {
    const double d = x_ranks[i] - y_ranks[i];
    r.R += d * d;
    spread += (x_ranks[i] - centre) * (x_ranks[i] - centre) + (y_ranks[i] - centre) * (y_ranks[i] - centre);
  }
  if (spread == 0.0) {
    r.rho = 0.0;
    r.z = 0.0;
    r.p_two_sided = Probability(1.0);
    r.small_sample = r.n < 10;
    return r;
  }
  r.rho = 1.0 - r.R / spread;
  // (6R - n(n^2-1)) / (n(n+1) sqrt(n-1)) when untied; R - spread and spread are
  // exact on mid-ranks, so identical rankings give exactly -sqrt(n-1).
  r.z = ((r.R - spread) / spread) * std::sqrt(n - 1.0);
  r.p_two_sided = two_sided_normal_p(r.z);
  r.small_sample = r.n < 10;
  return r;
}

MrcResult mrc_test(const std::vector<RankVector>& rank_matrix) {
  if (rank_matrix.size() < 2) throw Error(ErrorCode::DomainError, "mrc_test: need at least 2 judges");
  const std::size_t k = rank_matrix.front().size();
  for (const auto& row : rank_matrix)
    if (row.size() != k) throw Error(ErrorCode::RaggedMatrix, "mrc_test: judges ranked different numbers of subjects");
  if (k < 2) throw Error(ErrorCode::DomainError, "mrc_test: need at least 2 subjects");

  const double kd = static_cast<double>(k);
  const double expected_sum = kd * (kd + 1.0) / 2.0;
  for (std::size_t j = 0; j < rank_matrix.size(); ++j) {
    double sum = 0.0;
    for (double rank : rank_matrix[j]) {
      if (!(rank >= 1.0 && rank <= kd))
        throw Error(ErrorCode::InvalidRankRow, "mrc_test: judge " + std::to_string(j) + " has a rank outside [1, k]");
      sum += rank;
    }
    if (std::fabs(sum - expected_sum) > 1e-9 * expected_sum)
      throw Error(ErrorCode::InvalidRankRow, "mrc_test: judge " + std::to_string(j) + " ranks do not sum to k(k+1)/2");
  }

  MrcResult r;
  r.n_judges = static_cast<int>(rank_matrix.size());
  r.k_subjects = static_cast<int>(k);
  const double n = r.n_judges;
  r.S = n * kd * (kd * kd - 1.0) / 12.0;

  // Squared deviations of subjects' rank totals from the mean total n(k+1)/2.
  const double mean_total = n * (kd + 1.0) / 2.0;
  for (std::size_t s = 0; s < k; ++s) {
    double total = 0.0;
    for (const auto& row : rank_matrix) total += row[s];
    r.S_D += (total - mean_total) * (total - mean_total);
  }
  r.D1 = r.S_D / n;
  r.D2 = r.S - r.D1;
  if (std::fabs(r.D2) <= 1e-12 * r.S) r.D2 = 0.0;
  r.df1 = r.k_subjects - 1;
  r.df2 = r.k_subjects * (r.n_judges - 1);
  r.S1_sq = r.D1 / r.df1;
  r.S2_sq = r.D2 / r.df2;
  if (r.D2 <= 0.0) {
    r.F = kInf;
    r.p = Probability(0.0);
  } else {
    r.F = r.S1_sq / r.S2_sq;
    r.p = f_sf(r.F, r.df1, r.df2);
  }
  return r;
}

}  // namespace plancomp
