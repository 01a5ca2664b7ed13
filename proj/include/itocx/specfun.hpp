#pragma once

// Densities, CDFs and quantiles for the standard normal and Student-t(2)
// laws. Probabilities are carried as TailProbability so that masses near
// 0 and near 1 keep full relative precision.

#include <cstdint>

namespace itocx {

enum class Orientation : std::uint8_t {
  lower,  // mass = P(X <= x)
  upper,  // mass = P(X > x)
};

class TailProbability {
 public:
  // Throws std::domain_error unless 0 < mass < 1.
  TailProbability(double mass, Orientation orientation);

  static TailProbability lower(double p) { return {p, Orientation::lower}; }
  static TailProbability upper(double q) { return {q, Orientation::upper}; }

  double mass() const noexcept { return mass_; }
  Orientation orientation() const noexcept { return orientation_; }
  bool is_lower() const noexcept { return orientation_ == Orientation::lower; }

  // Probability of the complementary event. Exact: keeps the mass and
  // flips the orientation, so complement().complement() == *this.
  TailProbability complement() const noexcept;

  // Same probability stored in the other orientation (computes 1 - mass).
  // Throws std::domain_error when 1 - mass rounds to 1.
  TailProbability reoriented() const;

  // Collapsed values. These may lose relative precision in the far tail.
  double lower_value() const noexcept;
  double upper_value() const noexcept;

  friend bool operator==(const TailProbability&, const TailProbability&) = default;

 private:
  double mass_;
  Orientation orientation_;
};

/// Student-t with two degrees of freedom: density (2 + x^2)^(-3/2).
double t2_pdf(double x);
/// Lower mass for x <= 0, upper mass for x > 0. Both tails use
/// 1 / (s (s + |x|)) with s = sqrt(2 + x^2), which has no cancellation.
TailProbability t2_cdf(double x);
TailProbability t2_survival(double x);
double t2_quantile(TailProbability u);

double normal_pdf(double x);
/// Upper mass for x > 0, lower mass for x <= 0, from erfc(|x| / sqrt 2).
TailProbability normal_cdf(double x);
TailProbability normal_survival(double x);
/// AS241 initial guess refined by one Halley step in tail form.
double normal_quantile(TailProbability u);

struct DistributionSpec {
  const char* name;
  double (*pdf)(double);
  TailProbability (*cdf)(double);
  TailProbability (*survival)(double);
  double (*quantile)(TailProbability);
};

inline constexpr DistributionSpec kStandardNormal{
    "normal", normal_pdf, normal_cdf, normal_survival, normal_quantile};
inline constexpr DistributionSpec kStudentT2{
    "student_t2", t2_pdf, t2_cdf, t2_survival, t2_quantile};

}  // namespace itocx
