#include "itocx/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "itocx/specfun.hpp"

namespace itocx {
namespace {

void require_transform_domain(double x) {
  if (!std::isfinite(x)) throw std::domain_error("h: non-finite argument");
  if (std::fabs(x) > kMaxTransformArgument) throw std::range_error("normal tail underflow");
}

// Legendre roots by Newton iteration from the Chebyshev-like guess.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    nodes[i] = -z;
    nodes[order - 1 - i] = z;
    weights[i] = weights[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

double h(double x) {
  require_transform_domain(x);
  return t2_quantile(normal_cdf(x));
}

double h_inv(double y) {
  if (!std::isfinite(y)) throw std::domain_error("h_inv: non-finite argument");
  return normal_quantile(t2_cdf(y));
}

double h_prime(double x) {
  require_transform_domain(x);
  const double s = std::hypot(h(x), std::numbers::sqrt2);
  // Multiply phi in first: s^3 alone overflows near |x| = 37.
  return ((normal_pdf(x) * s) * s) * s;
}

AntiderivativeTable::AntiderivativeTable(double coverage, double spacing, int order,
                                         double tolerance)
    : coverage_(coverage), spacing_(spacing), tolerance_(tolerance) {
  if (!(coverage > 0.0 && coverage <= kMaxTransformArgument)) {
    throw std::domain_error("AntiderivativeTable: coverage must lie in (0, 37]");
  }
  if (!(spacing > 0.0 && spacing <= coverage) || order < 2 || !(tolerance > 0.0)) {
    throw std::domain_error("AntiderivativeTable: invalid spacing, order or tolerance");
  }
  gauss_legendre(order, nodes_, weights_);

  const auto panels = static_cast<std::size_t>(std::ceil(coverage / spacing - 1e-12));
  knots_.reserve(panels + 1);
  values_.reserve(panels + 1);
  knots_.push_back(0.0);
  values_.push_back(0.0);
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = knots_.back();
    const double b = std::min(coverage, static_cast<double>(k + 1) * spacing);
    const double whole = panel(a, b);
    const double mid = 0.5 * (a + b);
    const double halves = panel(a, mid) + panel(mid, b);
    if (std::fabs(whole - halves) > tolerance * std::max(1.0, std::fabs(whole))) {
      throw std::logic_error("AntiderivativeTable: panel rule does not meet tolerance");
    }
    knots_.push_back(b);
    values_.push_back(values_.back() + whole);
  }
}

double AntiderivativeTable::panel(double a, double b) const {
  const double centre = 0.5 * (a + b);
  const double radius = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    sum += weights_[i] * h(centre + radius * nodes_[i]);
  }
  return sum * radius;
}

double AntiderivativeTable::operator()(double x) const {
  if (!std::isfinite(x)) throw std::domain_error("f_eval: non-finite argument");
  const double a = std::fabs(x);
  if (a > coverage_) throw std::range_error("f_eval: argument outside table coverage");
  auto k = static_cast<std::size_t>(a / spacing_);
  k = std::min(k, knots_.size() - 1);
  while (k > 0 && knots_[k] > a) --k;
  if (knots_[k] == a) return values_[k];
  return values_[k] + panel(knots_[k], a);
}

double f_eval(double x, const AntiderivativeTable& table) { return table(x); }

double gsigma_cdf(double y, double sigma) {
  if (!(y > 0.0) || !std::isfinite(y)) throw std::domain_error("gsigma_cdf: y must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("gsigma_cdf: sigma must be positive");
  }
  // h^-1 is odd, so the two-sided normal mass is erf(a / sqrt 2).
  const double a = h_inv(std::sqrt(y)) / sigma;
  return std::erf(a / std::numbers::sqrt2);
}

double t2_squared_survival(double y) {
  if (!(y > 0.0) || std::isnan(y)) {
    throw std::domain_error("t2_squared_survival: y must be positive");
  }
  if (std::isinf(y)) return 0.0;
  // 1 - sqrt(r) == (1 - r) / (1 + sqrt(r)) with r = y / (2 + y).
  const double r = y / (2.0 + y);
  return (2.0 / (2.0 + y)) / (1.0 + std::sqrt(r));
}

}  // namespace itocx
