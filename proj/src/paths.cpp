#include "itocx/paths.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace itocx {

TimeGrid::TimeGrid(std::vector<double> t) {
  if (t.empty() || t.front() != 0.0) {
    throw std::invalid_argument("TimeGrid: must start at t = 0");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !(t[i] > t[i - 1])) {
      throw std::invalid_argument("TimeGrid: times must be finite and strictly increasing");
    }
  }
  t_ = std::make_shared<const std::vector<double>>(std::move(t));
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t n_steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon) || n_steps == 0) {
    throw std::invalid_argument("TimeGrid::uniform: need horizon > 0 and n_steps > 0");
  }
  std::vector<double> t(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    t[i] = horizon * static_cast<double>(i) / static_cast<double>(n_steps);
  }
  return TimeGrid(std::move(t));
}

SamplePath::SamplePath(TimeGrid grid, std::vector<double> w, SeedSpec seed)
    : grid_(std::move(grid)), w_(std::move(w)), seed_(seed) {
  if (w_.size() != grid_.size()) throw std::invalid_argument("SamplePath: length mismatch");
  if (w_.front() != 0.0) throw std::invalid_argument("SamplePath: must start at w = 0");
}

double SamplePath::max_abs() const noexcept {
  double m = 0.0;
  for (double v : w_) m = std::fmax(m, std::fabs(v));
  return m;
}

SamplePath sample_wiener(const TimeGrid& grid, SeedSpec seed) {
  const std::size_t n = grid.steps();
  std::vector<double> w(n + 1);
  w[0] = 0.0;
  if (n > 0) {
    NormalStream(seed).fill(0, std::span<double>(w).subspan(1));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::sqrt(grid[i + 1] - grid[i]) * w[i + 1];
      w[i + 1] = acc;
    }
  }
  return SamplePath(grid, std::move(w), seed);
}

SamplePath bridge_refine(const SamplePath& path, SeedSpec seed) {
  const auto t = path.times();
  const auto w = path.values();
  const std::size_t n = path.size() - 1;
  std::vector<double> z(n);
  NormalStream(seed).fill(0, z);

  std::vector<double> t2(2 * n + 1);
  std::vector<double> w2(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = t[i + 1] - t[i];
    t2[2 * i] = t[i];
    w2[2 * i] = w[i];
    t2[2 * i + 1] = t[i] + 0.5 * dt;
    w2[2 * i + 1] = 0.5 * (w[i] + w[i + 1]) + 0.5 * std::sqrt(dt) * z[i];
  }
  t2[2 * n] = t[n];
  w2[2 * n] = w[n];
  return SamplePath(TimeGrid(std::move(t2)), std::move(w2), path.seed());
}

SamplePath restrict_path(const SamplePath& path, std::size_t stride) {
  if (stride == 0 || (path.size() - 1) % stride != 0) {
    throw std::invalid_argument("restrict_path: stride must divide the step count");
  }
  std::vector<double> t;
  std::vector<double> w;
  for (std::size_t i = 0; i < path.size(); i += stride) {
    t.push_back(path.times()[i]);
    w.push_back(path.values()[i]);
  }
  return SamplePath(TimeGrid(std::move(t)), std::move(w), path.seed());
}

SamplePath scale_path(const SamplePath& path, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("scale_path: sigma must be positive");
  }
  std::vector<double> w(path.values().begin(), path.values().end());
  for (double& v : w) v *= sigma;
  return SamplePath(path.grid(), std::move(w), path.seed());
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
  char buf[64];
  out << "t,w\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto r = std::to_chars(buf, buf + sizeof buf, path.times()[i]);
    out.write(buf, r.ptr - buf);
    out << ',';
    r = std::to_chars(buf, buf + sizeof buf, path.values()[i]);
    out.write(buf, r.ptr - buf);
    out << '\n';
  }
}

}  // namespace itocx
