#include "itocx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itocx/integrate.hpp"

namespace itocx {

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  if (std::any_of(values_.begin(), values_.end(), [](double v) { return std::isnan(v); })) {
    throw std::domain_error("EmpiricalSample: NaN value");
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t EmpiricalSample::count_at_or_below(double x) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) -
                                  sorted_.begin());
}

double EmpiricalSample::survival_fraction(double x) const noexcept {
  if (sorted_.empty()) return 0.0;
  return static_cast<double>(sorted_.size() - count_at_or_below(x)) /
         static_cast<double>(sorted_.size());
}

double EmpiricalSample::mean() const noexcept {
  CompensatedSum acc;
  for (double v : values_) acc.add(v);
  return acc.value() / static_cast<double>(values_.size());
}

double ks_statistic(const EmpiricalSample& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::domain_error("ks_statistic: empty sample");
  const auto x = sample.sorted();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, std::fabs(above), std::fabs(below)});
  }
  return d;
}

TailIndexEstimate hill_estimator(const EmpiricalSample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 10 || k >= n) throw std::domain_error("hill_estimator: need 10 <= k < n");
  const auto x = sample.sorted();
  const double threshold = x[n - k - 1];
  if (!(threshold > 0.0)) throw std::domain_error("hill_estimator: nonpositive tail value");
  if (std::isinf(x[n - 1])) throw std::domain_error("hill_estimator: infinite tail value");
  const double log_threshold = std::log(threshold);
  CompensatedSum acc;
  for (std::size_t i = n - k; i < n; ++i) acc.add(std::log(x[i]) - log_threshold);
  const double mean_spacing = acc.value() / static_cast<double>(k);
  if (!(mean_spacing > 0.0)) throw std::domain_error("hill_estimator: degenerate tail");
  const double alpha = 1.0 / mean_spacing;
  return {alpha, k, alpha / std::sqrt(static_cast<double>(k))};
}

std::size_t default_hill_k(std::size_t n) {
  return static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n) * static_cast<double>(n))));
}

double tail_expectation(const EmpiricalSample& sample) {
  if (sample.empty()) throw std::domain_error("tail_expectation: empty sample");
  const auto x = sample.sorted();
  if (x.front() < 0.0) throw std::domain_error("tail_expectation: negative value");
  const std::size_t n = x.size();
  CompensatedSum acc;
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Between x_(i-1) and x_(i) exactly n - i values lie strictly above.
    acc.add((x[i] - previous) * static_cast<double>(n - i));
    previous = x[i];
  }
  return acc.value() / static_cast<double>(n);
}

std::vector<double> running_mean_profile(const EmpiricalSample& sample,
                                         std::span<const std::size_t> checkpoints) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      (!checkpoints.empty() && (checkpoints.back() > sample.size() || checkpoints.front() == 0))) {
    throw std::domain_error("running_mean_profile: checkpoints must be ascending in [1, n]");
  }
  const auto v = sample.values();
  std::vector<double> out;
  out.reserve(checkpoints.size());
  CompensatedSum acc;
  std::size_t consumed = 0;
  for (std::size_t m : checkpoints) {
    for (; consumed < m; ++consumed) acc.add(v[consumed]);
    out.push_back(acc.value() / static_cast<double>(m));
  }
  return out;
}

}  // namespace itocx
