#include "itocx/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace itocx {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": non-finite argument");
  }
}

// Mass of one t2 tail at distance a >= 0 from the origin:
// 1/2 - a / (2 s) == 1 / (s (s + a)) == 1 / (2 + a (a + s)), exact 1/2 at a = 0.
double t2_tail_mass(double a) {
  const double s = std::hypot(a, kSqrt2);
  const double denominator = 2.0 + a * (a + s);
  if (std::isfinite(denominator)) return 1.0 / denominator;
  return (1.0 / s) / (s + a);
}

// Mass of one normal tail at distance a >= 0 from the origin.
double normal_tail_mass(double a) { return 0.5 * std::erfc(a * kInvSqrt2); }

double polynomial(const double* c, int degree, double x) {
  double acc = c[degree];
  for (int i = degree - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

// Wichura, AS241 (PPND16). Returns x <= 0 with Phi(x) ~= p for p <= 1/2.
double as241_lower(double p) {
  static constexpr double a[] = {
      3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
      1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[] = {
      1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
      5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
      2.8729085735721942674e+4, 5.2264952788528545610e+3};
  static constexpr double c[] = {
      1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[] = {
      1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static constexpr double e[] = {
      6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[] = {
      1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * polynomial(a, 7, r) / polynomial(b, 7, r);
  }
  double r = std::sqrt(-std::log(p));
  if (r <= 5.0) {
    r -= 1.6;
    return -polynomial(c, 7, r) / polynomial(d, 7, r);
  }
  r -= 5.0;
  return -polynomial(e, 7, r) / polynomial(f, 7, r);
}

// Solves Phi(x) = p for p in (0, 1/2]; the result is <= 0.
double lower_tail_quantile(double p) {
  if (p == 0.5) return 0.0;
  double x = as241_lower(p);
  // Halley step on Phi(x) - p; x < 0 so the lower mass is a tail mass.
  const double err = (normal_tail_mass(-x) - p) / normal_pdf(x);
  x -= err / (1.0 + 0.5 * x * err);
  return x;
}

}  // namespace

TailProbability::TailProbability(double mass, Orientation orientation)
    : mass_(mass), orientation_(orientation) {
  if (!(mass > 0.0 && mass < 1.0)) {
    throw std::domain_error("TailProbability: mass must lie in (0, 1)");
  }
}

TailProbability TailProbability::complement() const noexcept {
  TailProbability out = *this;
  out.orientation_ = is_lower() ? Orientation::upper : Orientation::lower;
  return out;
}

TailProbability TailProbability::reoriented() const {
  const double other = 1.0 - mass_;
  if (!(other < 1.0)) {
    throw std::domain_error("TailProbability: reorientation would lose all precision");
  }
  return {other, is_lower() ? Orientation::upper : Orientation::lower};
}

double TailProbability::lower_value() const noexcept {
  return is_lower() ? mass_ : 1.0 - mass_;
}

double TailProbability::upper_value() const noexcept {
  return is_lower() ? 1.0 - mass_ : mass_;
}

double t2_pdf(double x) {
  require_finite(x, "t2_pdf");
  const double inv = 1.0 / std::hypot(x, kSqrt2);
  return inv * inv * inv;
}

TailProbability t2_cdf(double x) {
  require_finite(x, "t2_cdf");
  const double mass = t2_tail_mass(std::fabs(x));
  if (mass == 0.0) throw std::range_error("t2_cdf: tail mass underflow");
  return {mass, x > 0.0 ? Orientation::upper : Orientation::lower};
}

TailProbability t2_survival(double x) { return t2_cdf(x).complement(); }

double t2_quantile(TailProbability u) {
  // Writing m for the tail mass, |x| = (1 - 2m) / sqrt(2 m (1 - m)).
  // The sign follows which side of 1/2 the probability lies on.
  const double m = u.mass();
  const bool small = m <= 0.5;
  const double tail = small ? m : 1.0 - m;
  const double magnitude = (1.0 - 2.0 * tail) / std::sqrt(2.0 * tail * (1.0 - tail));
  if (magnitude == 0.0) return 0.0;
  // lower & small => left tail (negative); upper & small => right tail.
  const bool negative = (u.is_lower() == small);
  return negative ? -magnitude : magnitude;
}

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

TailProbability normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  const double mass = normal_tail_mass(std::fabs(x));
  if (mass == 0.0) throw std::range_error("normal_cdf: tail mass underflow");
  return {mass, x > 0.0 ? Orientation::upper : Orientation::lower};
}

TailProbability normal_survival(double x) { return normal_cdf(x).complement(); }

double normal_quantile(TailProbability u) {
  const double m = u.mass();
  const bool small = m <= 0.5;
  // 1 - m is exact for m in [1/2, 1).
  const double magnitude = -lower_tail_quantile(small ? m : 1.0 - m);
  if (magnitude == 0.0) return 0.0;
  const bool negative = (u.is_lower() == small);
  return negative ? -magnitude : magnitude;
}

}  // namespace itocx
