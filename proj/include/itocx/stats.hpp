#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace itocx {

/// Sample in insertion order plus a cached ascending copy.
class EmpiricalSample {
 public:
  /// Throws std::domain_error on NaN values.
  explicit EmpiricalSample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// #{i : x_i <= x}, by binary search on the sorted view.
  std::size_t count_at_or_below(double x) const noexcept;
  /// #{i : x_i > x} / n.
  double survival_fraction(double x) const noexcept;
  double mean() const noexcept;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

/// sup |F_n - F| evaluated at the order statistics.
/// std::domain_error on an empty sample.
double ks_statistic(const EmpiricalSample& sample, const std::function<double(double)>& cdf);

/// Asymptotic two-sided KS critical values c(alpha) / sqrt(n).
inline constexpr double kKsCritical01 = 1.628;
inline constexpr double kKsCritical05 = 1.358;

struct TailIndexEstimate {
  double alpha_hat = 0.0;
  std::size_t k = 0;
  double standard_error = 0.0;  // alpha_hat / sqrt(k)
};

/// Hill estimator from the k largest order statistics against the
/// (k+1)-th largest. Requires 10 <= k < n and a positive threshold.
TailIndexEstimate hill_estimator(const EmpiricalSample& sample, std::size_t k);

/// round(n^(2/3)).
std::size_t default_hill_k(std::size_t n);

/// Integral of the empirical survival function of a nonnegative sample:
/// sum over sorted gaps of gap * (fraction strictly above).
double tail_expectation(const EmpiricalSample& sample);

/// Mean of the first m values (insertion order) for each checkpoint m.
std::vector<double> running_mean_profile(const EmpiricalSample& sample,
                                         std::span<const std::size_t> checkpoints);

}  // namespace itocx
