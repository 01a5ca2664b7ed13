#pragma once

// Left-point stochastic and time integrals along a sampled path.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "itocx/paths.hpp"
#include "itocx/transform.hpp"

namespace itocx {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// g(t, w) -> real. May throw std::range_error where it is undefined.
template <class G>
concept IntegrandFn = std::regular_invocable<const G&, double, double> &&
                      std::convertible_to<std::invoke_result_t<const G&, double, double>, double>;

struct PathIntegralResult {
  double value = 0.0;
  std::size_t n_steps = 0;
  /// Set iff an evaluation threw a range error or any term or partial
  /// sum was non-finite. `value` is meaningless when set.
  bool overflow = false;
  std::optional<std::size_t> offending_node;
};

namespace detail {

// sum_i term(g(t_i, w_i), i) over the left endpoints.
template <IntegrandFn G, class Weight>
PathIntegralResult left_sum(const SamplePath& path, const G& g, Weight weight) {
  const auto t = path.times();
  const auto w = path.values();
  PathIntegralResult out;
  out.n_steps = path.size() - 1;
  CompensatedSum acc;
  for (std::size_t i = 0; i < out.n_steps; ++i) {
    double term;
    try {
      term = weight(static_cast<double>(g(t[i], w[i])), i);
    } catch (const std::range_error&) {
      out.overflow = true;
      out.offending_node = i;
      return out;
    }
    acc.add(term);
    if (!std::isfinite(term) || !std::isfinite(acc.value())) {
      out.overflow = true;
      out.offending_node = i;
      return out;
    }
  }
  out.value = acc.value();
  return out;
}

}  // namespace detail

/// sum_i g(t_i, w_i) (w_{i+1} - w_i).
template <IntegrandFn G>
PathIntegralResult ito_left_sum(const SamplePath& path, const G& g) {
  const auto w = path.values();
  return detail::left_sum(path, g, [w](double gi, std::size_t i) { return gi * (w[i + 1] - w[i]); });
}

/// sum_i g(t_i, w_i) (t_{i+1} - t_i).
template <IntegrandFn G>
PathIntegralResult time_left_sum(const SamplePath& path, const G& g) {
  const auto t = path.times();
  return detail::left_sum(path, g, [t](double gi, std::size_t i) { return gi * (t[i + 1] - t[i]); });
}

/// Left sum of g^2 dt. Finite on every path is the discrete witness of
/// pathwise local square integrability.
template <IntegrandFn G>
PathIntegralResult pathwise_l2_functional(const SamplePath& path, const G& g) {
  const auto t = path.times();
  return detail::left_sum(path, g,
                          [t](double gi, std::size_t i) { return gi * gi * (t[i + 1] - t[i]); });
}

/// Left sum of |g| dt.
template <IntegrandFn G>
PathIntegralResult pathwise_l1_functional(const SamplePath& path, const G& g) {
  const auto t = path.times();
  return detail::left_sum(path, g,
                          [t](double gi, std::size_t i) { return std::fabs(gi) * (t[i + 1] - t[i]); });
}

inline constexpr auto kTransformIntegrand = [](double, double w) { return h(w); };
inline constexpr auto kTransformDerivativeIntegrand = [](double, double w) { return h_prime(w); };

/// f(w_n) - f(w_0) - sum h(w_i) dw_i - (1/2) sum h'(w_i) dt_i.
/// Throws std::range_error if the path leaves the domain of h or the table.
double ito_lemma_residual(const SamplePath& path, const AntiderivativeTable& table);

}  // namespace itocx
