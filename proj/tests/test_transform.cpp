#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "itocx/specfun.hpp"
#include "itocx/transform.hpp"

using namespace itocx;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Adaptive Gauss-Kronrod integral of h on [0, x]; independent of the
// checkpoint table.
double oracle_f(double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double a = std::fabs(x);
  return gauss_kronrod<double, 31>::integrate([](double s) { return h(s); }, 0.0, a, 20, 1e-15);
}

}  // namespace

TEST_CASE("h at the origin and symmetry") {
  CHECK(h(0.0) == 0.0);
  CHECK_FALSE(std::signbit(h(0.0)));
  for (double a : {0.5, 2.0, 5.0}) CHECK(h(-a) == -h(a));
  for (double x = 0.0; x <= 8.0; x += 0.01) CHECK(std::fabs(h(-x) + h(x)) <= 1e-12);
}

TEST_CASE("h composes the two closed forms") {
  // (1 - 0.05) / sqrt(2 * 0.025 * 0.975), with 50-digit value for the exact point.
  CHECK(h(1.959964) == doctest::Approx(4.30265).epsilon(1e-5));
  CHECK(rel_err(h(1.959964), 4.3026528136942877831) < 1e-12);
  CHECK(rel_err(h(8.0), 28350209.834414744034) < 1e-12);
  CHECK(rel_err(h(12.0), 16776624447794901.736) < 1e-11);
  CHECK(std::isfinite(h(37.0)));
}

TEST_CASE("h domain") {
  CHECK_THROWS_AS(h(37.5), std::range_error);
  CHECK_THROWS_AS(h(-40.0), std::range_error);
  CHECK_THROWS_AS(h(std::nan("")), std::domain_error);
  CHECK_THROWS_WITH(h(38.0), "normal tail underflow");
  CHECK_THROWS_AS(h_prime(38.0), std::range_error);
}

TEST_CASE("h is strictly increasing") {
  double previous = h(-37.0);
  for (double x = -36.99; x <= 37.0; x += 0.01) {
    const double v = h(x);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("h_inv") {
  CHECK(h_inv(0.0) == 0.0);
  CHECK(rel_err(h_inv(4.30265), 1.9599634818075137998) < 1e-12);
  CHECK(h_inv(4.30265) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(rel_err(h_inv(1.0), 0.80183271652923013037) < 1e-12);
  CHECK(h_inv(-3.0) < 0.0);
  CHECK(h_inv(3.0) > 0.0);
  CHECK_THROWS_AS(h_inv(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("h and h_inv are mutually inverse") {
  for (double x = -8.0; x <= 8.0; x += 0.0625) CHECK(std::fabs(h_inv(h(x)) - x) <= 1e-9);
  for (double e = -6.0; e <= 6.0; e += 0.05) {
    for (double sign : {-1.0, 1.0}) {
      const double y = sign * std::pow(10.0, e);
      CHECK(std::fabs(h(h_inv(y)) - y) <= 1e-9 * std::max(1.0, std::fabs(y)));
    }
  }
}

TEST_CASE("h_prime") {
  CHECK(rel_err(h_prime(0.0), 2.0 / std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(h_prime(0.0) == doctest::Approx(1.12837917).epsilon(1e-8));
  CHECK(h_prime(2.0) == h_prime(-2.0));
  CHECK(std::isfinite(h_prime(37.0)));
  CHECK(h_prime(37.0) > 0.0);

  const double eps = 1e-5;
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double fd = (h(x + eps) - h(x - eps)) / (2.0 * eps);
    CHECK(rel_err(fd, h_prime(x)) < 1e-6);
  }
}

TEST_CASE("AntiderivativeTable layout") {
  const AntiderivativeTable table;
  CHECK(table.coverage() == 12.0);
  CHECK(table.spacing() == 0.25);
  CHECK(table.checkpoint_x().size() == 49);
  CHECK(table.checkpoint_f().front() == 0.0);
  const auto& f = table.checkpoint_f();
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] > f[i - 1]);
  CHECK_THROWS_AS(AntiderivativeTable(40.0), std::domain_error);
}

TEST_CASE("f_eval") {
  const AntiderivativeTable table;
  CHECK(f_eval(0.0, table) == 0.0);
  for (double x : {1.0, 3.0, 6.0}) CHECK(f_eval(-x, table) == f_eval(x, table));

  SUBCASE("frozen 50-digit values") {
    CHECK(rel_err(f_eval(0.5, table), 0.14377417006383437333) < 1e-12);
    CHECK(rel_err(f_eval(1.0, table), 0.61052651546033329101) < 1e-12);
    CHECK(rel_err(f_eval(1.5, table), 1.5297914256896732101) < 1e-12);
    CHECK(rel_err(f_eval(2.0, table), 3.2169326764650045039) < 1e-12);
    CHECK(rel_err(f_eval(3.0, table), 13.065010890303945998) < 1e-12);
    CHECK(rel_err(f_eval(6.0, table), 7767.4603259515126542) < 1e-12);
    CHECK(rel_err(f_eval(8.0, table), 7212365.5453034867965) < 1e-12);
    CHECK(rel_err(f_eval(11.9, table), 1556395641978725.1594) < 1e-11);
  }

  SUBCASE("matches adaptive quadrature") {
    for (double x = -11.9; x <= 11.9; x += 0.37) CHECK(rel_err(f_eval(x, table), oracle_f(x)) <= 1e-9);
  }

  SUBCASE("derivative is h") {
    const double eps = 1e-5;
    CHECK(rel_err((f_eval(1.5 + eps, table) - f_eval(1.5 - eps, table)) / (2 * eps), h(1.5)) < 1e-6);
    CHECK(rel_err(h(1.5), 2.4535725131086651414) < 1e-12);
    for (double x = -10.0; x <= 10.0; x += 0.1) {
      if (std::fabs(x) < 1e-9) continue;
      const double fd = (f_eval(x + eps, table) - f_eval(x - eps, table)) / (2 * eps);
      CHECK(rel_err(fd, h(x)) < 1e-6);
    }
  }

  SUBCASE("refinement leaves values unchanged") {
    const AntiderivativeTable fine(12.0, 0.125, 20);
    for (double x = 0.1; x <= 12.0; x += 0.3) {
      CHECK(std::fabs(fine(x) - table(x)) <= table.tolerance() * std::max(1.0, table(x)));
    }
  }

  CHECK_THROWS_AS(f_eval(12.5, table), std::range_error);
  const AntiderivativeTable wide(20.0);
  CHECK(std::isfinite(f_eval(19.0, wide)));
  CHECK(rel_err(f_eval(8.0, wide), f_eval(8.0, table)) < 1e-13);
}

TEST_CASE("t2_squared_survival") {
  CHECK(t2_squared_survival(2.0) == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-15));
  CHECK(t2_squared_survival(2.0) == doctest::Approx(0.29289322).epsilon(1e-8));
  CHECK(t2_squared_survival(1e-12) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(t2_squared_survival(1e-12) < 1.0);
  CHECK(rel_err(t2_squared_survival(1e6), 9.9999850000249999562e-7) < 1e-12);
  CHECK(std::fabs(t2_squared_survival(1e6) / 1e-6 - 1.0) < 0.01);
  // Equals 2 (1 - F(sqrt y)) from the t2 law directly.
  for (double y : {0.01, 0.5, 3.0, 100.0, 1e8}) {
    CHECK(rel_err(t2_squared_survival(y), 2.0 * t2_cdf(std::sqrt(y)).mass()) < 1e-14);
  }
  CHECK_THROWS_AS(t2_squared_survival(0.0), std::domain_error);
  CHECK_THROWS_AS(t2_squared_survival(-1.0), std::domain_error);
}

TEST_CASE("gsigma_cdf") {
  for (double y : {1e-6, 0.1, 1.0, 2.0, 10.0, 1e4}) {
    CHECK(std::fabs(gsigma_cdf(y, 1.0) - (1.0 - t2_squared_survival(y))) <= 1e-10);
    // 2 N(h^-1(sqrt y)) - 1 through tail probabilities.
    const double two_sided = 1.0 - 2.0 * normal_cdf(h_inv(std::sqrt(y))).mass();
    CHECK(std::fabs(gsigma_cdf(y, 1.0) - two_sided) <= 1e-14);
  }

  const double far = gsigma_cdf(1.0, 100.0);
  CHECK(far < 0.01);
  CHECK(rel_err(far, 0.0063976308941572872) < 1e-12);
  const double first_order = 2.0 * normal_pdf(0.0) * h_inv(1.0) / 100.0;
  CHECK(std::fabs(far - first_order) < 1e-6);

  for (double y : {0.1, 1.0, 10.0}) {
    double previous = 1.0;
    for (double sigma : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double g = gsigma_cdf(y, sigma);
      CHECK(g < previous);
      previous = g;
    }
  }
  CHECK(gsigma_cdf(1.0, 2.0) < gsigma_cdf(1.0, 1.0));
  CHECK_THROWS_AS(gsigma_cdf(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(gsigma_cdf(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(gsigma_cdf(1.0, -2.0), std::domain_error);
}
