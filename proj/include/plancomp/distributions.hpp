#pragma once

namespace plancomp {

// A value in [0, 1]. Construction clamps round-off excursions and rejects
// anything further outside.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  Probability complement() const { return Probability(1.0 - value_); }

  friend constexpr bool operator==(Probability, Probability) = default;

 private:
  double value_ = 0.0;
};

Probability std_normal_cdf(double z);
// Upper tail 1 - Phi(z), without cancellation for large z.
Probability std_normal_sf(double z);
// 2 * (1 - Phi(|z|)).
Probability two_sided_normal_p(double z);

// I_x(a, b) by Lentz continued fraction, with the symmetry
// I_x(a,b) = 1 - I_{1-x}(b,a) when x is past the mean.
Probability regularized_incomplete_beta(double x, double a, double b);

Probability student_t_cdf(double t, int df);
// 2 * P(T > |t|); t may be infinite.
Probability two_sided_t_p(double t, int df);

Probability f_cdf(double x, int d1, int d2);
// P(F > x); x may be +infinity.
Probability f_sf(double x, int d1, int d2);

}  // namespace plancomp
