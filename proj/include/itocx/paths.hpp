#pragma once

// Discretized standard Wiener paths on explicit time grids.

#include <cstddef>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "itocx/rng.hpp"

namespace itocx {

/// Strictly increasing, finite times starting at 0. Immutable and cheap to
/// copy: copies share the underlying storage.
class TimeGrid {
 public:
  /// Throws std::invalid_argument unless t[0] == 0 and t is strictly
  /// increasing and finite.
  explicit TimeGrid(std::vector<double> t);

  /// n_steps equal steps on [0, horizon].
  static TimeGrid uniform(double horizon, std::size_t n_steps);

  std::span<const double> times() const noexcept { return *t_; }
  std::size_t size() const noexcept { return t_->size(); }
  std::size_t steps() const noexcept { return t_->size() - 1; }
  double horizon() const noexcept { return t_->back(); }
  double operator[](std::size_t i) const noexcept { return (*t_)[i]; }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t_ == b.t_ || *a.t_ == *b.t_;
  }

 private:
  std::shared_ptr<const std::vector<double>> t_;
};

class SamplePath {
 public:
  /// Throws std::invalid_argument on length mismatch or w[0] != 0.
  SamplePath(TimeGrid grid, std::vector<double> w, SeedSpec seed);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return w_; }
  std::span<const double> times() const noexcept { return grid_.times(); }
  SeedSpec seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return w_.size(); }
  double back() const noexcept { return w_.back(); }
  double max_abs() const noexcept;

 private:
  TimeGrid grid_;
  std::vector<double> w_;
  SeedSpec seed_;
};

/// w[0] = 0; w[i+1] = w[i] + sqrt(t[i+1] - t[i]) * Z_i with Z_i the i-th
/// normal of the seed's stream.
SamplePath sample_wiener(const TimeGrid& grid, SeedSpec seed);

/// Inserts the midpoint of every step, drawn from the Brownian-bridge law
/// (mean of the endpoints, variance dt / 4). Existing values are kept.
SamplePath bridge_refine(const SamplePath& path, SeedSpec seed);

/// Every `stride`-th point, e.g. stride 2 undoes one bridge_refine.
SamplePath restrict_path(const SamplePath& path, std::size_t stride);

/// Values multiplied by sigma > 0; std::domain_error otherwise.
SamplePath scale_path(const SamplePath& path, double sigma);

/// Debug dump with header "t,w".
void write_path_csv(std::ostream& out, const SamplePath& path);

}  // namespace itocx
