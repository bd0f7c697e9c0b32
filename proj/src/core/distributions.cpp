#include "plancomp/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plancomp/error.hpp"

namespace plancomp {

namespace {

constexpr double kProbabilitySlack = 1e-12;

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

// Continued fraction for I_x(a,b) (modified Lentz). Converges quickly for
// x < (a+1)/(a+b+2).
double beta_continued_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  constexpr int max_iter = 100000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) return h;
  }
  throw Error(ErrorCode::DomainError, "incomplete beta: continued fraction did not converge");
}

double incomplete_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

}  // namespace

Probability::Probability(double value) {
  if (std::isnan(value) || value < -kProbabilitySlack || value > 1.0 + kProbabilitySlack)
    throw Error(ErrorCode::DomainError, "probability out of range: " + std::to_string(value));
  value_ = value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

Probability std_normal_cdf(double z) {
  require(std::isfinite(z), ErrorCode::NonFiniteInput, "std_normal_cdf: non-finite input");
  return Probability(0.5 * std::erfc(-z / std::numbers::sqrt2));
}

Probability std_normal_sf(double z) {
  require(std::isfinite(z), ErrorCode::NonFiniteInput, "std_normal_sf: non-finite input");
  return Probability(0.5 * std::erfc(z / std::numbers::sqrt2));
}

Probability two_sided_normal_p(double z) {
  require(std::isfinite(z), ErrorCode::NonFiniteInput, "two_sided_normal_p: non-finite input");
  return Probability(std::erfc(std::fabs(z) / std::numbers::sqrt2));
}

Probability regularized_incomplete_beta(double x, double a, double b) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::DomainError, "incomplete beta: x outside [0,1]");
  require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b), ErrorCode::DomainError,
          "incomplete beta: shape parameters must be positive");
  return Probability(incomplete_beta(x, a, b));
}

Probability student_t_cdf(double t, int df) {
  require(df >= 1, ErrorCode::DomainError, "student_t_cdf: df must be >= 1");
  require(!std::isnan(t), ErrorCode::NonFiniteInput, "student_t_cdf: NaN input");
  if (std::isinf(t)) return Probability(t > 0 ? 1.0 : 0.0);
  const double n = df;
  // P(|T| > |t|) = I_{n/(n+t^2)}(n/2, 1/2)
  const double tail2 = incomplete_beta(n / (n + t * t), 0.5 * n, 0.5);
  return Probability(t > 0 ? 1.0 - 0.5 * tail2 : 0.5 * tail2);
}

Probability two_sided_t_p(double t, int df) {
  require(df >= 1, ErrorCode::DomainError, "two_sided_t_p: df must be >= 1");
  require(!std::isnan(t), ErrorCode::NonFiniteInput, "two_sided_t_p: NaN input");
  if (std::isinf(t)) return Probability(0.0);
  const double n = df;
  return Probability(incomplete_beta(n / (n + t * t), 0.5 * n, 0.5));
}

Probability f_cdf(double x, int d1, int d2) {
  require(d1 >= 1 && d2 >= 1, ErrorCode::DomainError, "f_cdf: degrees of freedom must be >= 1");
  require(!std::isnan(x) && x >= 0.0, ErrorCode::DomainError, "f_cdf: x must be >= 0");
  if (std::isinf(x)) return Probability(1.0);
  const double u = d1 * x / (d1 * x + d2);
  return Probability(incomplete_beta(u, 0.5 * d1, 0.5 * d2));
}

Probability f_sf(double x, int d1, int d2) {
  require(d1 >= 1 && d2 >= 1, ErrorCode::DomainError, "f_sf: degrees of freedom must be >= 1");
  require(!std::isnan(x) && x >= 0.0, ErrorCode::DomainError, "f_sf: x must be >= 0");
  if (std::isinf(x)) return Probability(0.0);
  // 1 - I_u(d1/2, d2/2) = I_{1-u}(d2/2, d1/2) with 1-u formed directly
  const double v = d2 / (d1 * x + d2);
  return Probability(incomplete_beta(v, 0.5 * d2, 0.5 * d1));
}

}  // namespace plancomp
