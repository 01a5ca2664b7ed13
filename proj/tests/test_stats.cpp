#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "itocx/specfun.hpp"
#include "itocx/stats.hpp"

using namespace itocx;

namespace {

std::vector<double> pareto(std::size_t n, double alpha, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = std::pow(1.0 - u(gen), -1.0 / alpha);
  return v;
}

}  // namespace

TEST_CASE("EmpiricalSample") {
  const EmpiricalSample s({3.0, 1.0, 2.0, 2.0});
  CHECK(s.size() == 4);
  CHECK(s.values()[0] == 3.0);
  CHECK(s.sorted()[0] == 1.0);
  CHECK(s.count_at_or_below(2.0) == 3);
  CHECK(s.count_at_or_below(0.5) == 0);
  CHECK(s.survival_fraction(2.0) == 0.25);
  CHECK(s.mean() == 2.0);
  CHECK_THROWS_AS(EmpiricalSample({1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("ks_statistic") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };

  SUBCASE("perfectly stratified sample") {
    const std::size_t n = 200;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i + 0.5) / n;
    CHECK(ks_statistic(EmpiricalSample(v), uniform) == doctest::Approx(0.5 / n).epsilon(1e-12));
  }

  CHECK(ks_statistic(EmpiricalSample({0.5}), uniform) == 0.5);
  CHECK(ks_statistic(EmpiricalSample({0.2}), uniform) == doctest::Approx(0.8));
  CHECK_THROWS_AS(ks_statistic(EmpiricalSample({}), uniform), std::domain_error);

  SUBCASE("uniform draws pass at the 1% level") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int rejected = 0;
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> v(2000);
      for (auto& x : v) x = u(gen);
      if (ks_statistic(EmpiricalSample(v), uniform) >= kKsCritical01 / std::sqrt(2000.0)) ++rejected;
    }
    CHECK(rejected <= 8);
  }

  SUBCASE("invariant under increasing transforms") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(5000), w(5000);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = u(gen);
      w[i] = std::log(v[i] / (1.0 - v[i]));
    }
    const auto logistic = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    CHECK(std::fabs(ks_statistic(EmpiricalSample(v), uniform) -
                    ks_statistic(EmpiricalSample(w), logistic)) < 1e-12);
  }

  SUBCASE("wrong law is rejected") {
    std::mt19937_64 gen(9);
    std::student_t_distribution<double> t2(2.0);
    std::vector<double> v(20000);
    for (auto& x : v) x = t2(gen);
    const EmpiricalSample s(v);
    const auto t2_lower = [](double x) { return t2_cdf(x).lower_value(); };
    const auto normal_lower = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    const double crit = kKsCritical01 / std::sqrt(20000.0);
    CHECK(ks_statistic(s, t2_lower) < crit);
    CHECK(ks_statistic(s, normal_lower) > crit);
  }
}

TEST_CASE("hill_estimator") {
  SUBCASE("recovers the Pareto index") {
    for (double alpha : {1.0, 2.0}) {
      const EmpiricalSample s(pareto(1000000, alpha, 11 + static_cast<std::uint64_t>(alpha)));
      const auto est = hill_estimator(s, 10000);
      CHECK(est.k == 10000);
      CHECK(est.standard_error == doctest::Approx(est.alpha_hat / 100.0));
      CHECK(std::fabs(est.alpha_hat - alpha) < 3.0 * alpha / 100.0);
    }
  }

  SUBCASE("scale invariant and halved by squaring") {
    const auto v = pareto(100000, 1.5, 3);
    std::vector<double> scaled(v), squared(v);
    for (auto& x : scaled) x *= 7.0;
    for (auto& x : squared) x *= x;
    const auto base = hill_estimator(EmpiricalSample(v), 2000);
    CHECK(hill_estimator(EmpiricalSample(scaled), 2000).alpha_hat ==
          doctest::Approx(base.alpha_hat).epsilon(1e-12));
    CHECK(hill_estimator(EmpiricalSample(squared), 2000).alpha_hat ==
          doctest::Approx(base.alpha_hat / 2.0).epsilon(1e-12));
  }

  SUBCASE("preconditions") {
    const EmpiricalSample s(pareto(100, 1.0, 1));
    CHECK_THROWS_AS(hill_estimator(s, 9), std::domain_error);
    CHECK_THROWS_AS(hill_estimator(s, 100), std::domain_error);
    CHECK_NOTHROW(hill_estimator(s, 10));
    std::vector<double> negative(100, -1.0);
    CHECK_THROWS_AS(hill_estimator(EmpiricalSample(negative), 10), std::domain_error);
  }

  CHECK(default_hill_k(1000000) == 10000);
  CHECK(default_hill_k(1000) == 100);
}

TEST_CASE("tail_expectation") {
  CHECK(tail_expectation(EmpiricalSample({1.0, 2.0, 3.0})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tail_expectation(EmpiricalSample({0.0, 0.0, 4.0})) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(tail_expectation(EmpiricalSample({1.0, -0.5})), std::domain_error);
  CHECK_THROWS_AS(tail_expectation(EmpiricalSample({})), std::domain_error);

  // Equals the sample mean for any nonnegative sample.
  std::mt19937_64 gen(5);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(100000);
  for (auto& x : v) x = e(gen);
  const EmpiricalSample s(v);
  CHECK(std::fabs(tail_expectation(s) - s.mean()) <= 1e-12);
}

TEST_CASE("running_mean_profile") {
  const EmpiricalSample s({1.0, 3.0, 5.0, 7.0});
  const std::vector<std::size_t> cps{1, 2, 4};
  const auto m = running_mean_profile(s, cps);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 2.0);
  CHECK(m[2] == 4.0);
  CHECK(running_mean_profile(s, std::vector<std::size_t>{}).empty());

  const std::vector<std::size_t> unsorted{2, 1};
  const std::vector<std::size_t> zero{0, 2};
  const std::vector<std::size_t> past_end{2, 5};
  CHECK_THROWS_AS(running_mean_profile(s, unsorted), std::domain_error);
  CHECK_THROWS_AS(running_mean_profile(s, zero), std::domain_error);
  CHECK_THROWS_AS(running_mean_profile(s, past_end), std::domain_error);
}

TEST_CASE("running-mean growth between half and full sample is bounded by exchangeability") {
  // With i.i.d. halves S1, S2, the ratio mean(n) / mean(n/2) = (S1 + S2) / (2 S1)
  // exceeds 1.05 only if S2 > 1.1 S1, which has probability below 1/2 even
  // for an infinite-mean law.
  const std::size_t n = 10000, reps = 400;
  std::size_t growing = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const EmpiricalSample s(pareto(n, 1.0, 1000 + r));
    const std::vector<std::size_t> cps{n / 2, n};
    const auto m = running_mean_profile(s, cps);
    if (m[1] / m[0] > 1.05) ++growing;
  }
  const double fraction = static_cast<double>(growing) / reps;
  CHECK(fraction < 0.5 + 3.0 * std::sqrt(0.25 / reps));
  // Still frequent: the heavy tail makes large jumps common.
  CHECK(fraction > 0.2);
}
