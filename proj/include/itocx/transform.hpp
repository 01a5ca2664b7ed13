#pragma once

// The normal-to-t2 quantile transform h = F^-1 o N, its inverse and
// derivative, the antiderivative f, and the closed-form laws of h(sigma Z)^2.

#include <cstddef>
#include <vector>

namespace itocx {

/// |x| beyond this makes the normal tail mass underflow.
inline constexpr double kMaxTransformArgument = 37.0;

/// t2 quantile of the normal CDF, composed in tail form. Odd, increasing.
/// Throws std::range_error("normal tail underflow") for |x| > 37.
double h(double x);
/// Normal quantile of the t2 CDF.
double h_inv(double y);
/// phi(x) * (2 + h(x)^2)^(3/2). Even and strictly positive.
double h_prime(double x);

/// Checkpointed antiderivative of h normalized by f(0) = 0.
///
/// Checkpoints sit at multiples of `spacing` on [0, coverage]; each holds
/// the integral of h from the origin. An evaluation adds one Gauss-Legendre
/// panel from the nearest checkpoint below |x|, so its cost is independent
/// of x. Since h is odd, f is even and only the right half is stored.
class AntiderivativeTable {
 public:
  explicit AntiderivativeTable(double coverage = 12.0, double spacing = 0.25,
                               int order = 20, double tolerance = 1e-12);

  double operator()(double x) const;

  double coverage() const noexcept { return coverage_; }
  double spacing() const noexcept { return spacing_; }
  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  double tolerance() const noexcept { return tolerance_; }
  const std::vector<double>& checkpoint_x() const noexcept { return knots_; }
  const std::vector<double>& checkpoint_f() const noexcept { return values_; }

 private:
  double panel(double a, double b) const;

  double coverage_;
  double spacing_;
  double tolerance_;
  std::vector<double> nodes_;    // on [-1, 1]
  std::vector<double> weights_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// f(x) for |x| <= table.coverage(); std::range_error otherwise.
double f_eval(double x, const AntiderivativeTable& table);

/// CDF of h(sigma W(1))^2 at y: N(h^-1(sqrt y)/sigma) - N(h^-1(-sqrt y)/sigma).
double gsigma_cdf(double y, double sigma);
/// P(h(W(1))^2 > y) = 1 - sqrt(y / (2 + y)).
double t2_squared_survival(double y);

}  // namespace itocx
