#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (root, stream, index), so any subset of an ensemble can be produced in
// any order, on any number of threads, with identical bits.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace itocx {

struct SeedSpec {
  std::uint64_t root = 0;
  std::uint64_t stream = 0;

  /// Independent root for a named purpose (bridge level, replicate, ...).
  /// The stream index is kept.
  SeedSpec derive(std::uint64_t tag) const noexcept;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

using PhiloxBlock = std::array<std::uint32_t, 4>;

/// Philox4x32-10 (Salmon et al., SC'11).
PhiloxBlock philox4x32(PhiloxBlock counter, std::array<std::uint32_t, 2> key) noexcept;

/// Standard normals addressed by index within one (root, stream) pair.
/// Indices 2j and 2j+1 are the Box-Muller pair of Philox block j.
class NormalStream {
 public:
  explicit NormalStream(SeedSpec seed) noexcept : seed_(seed) {}

  double operator()(std::uint64_t index) const noexcept;
  /// out[i] = (*this)(first + i).
  void fill(std::uint64_t first, std::span<double> out) const noexcept;

  /// Uniforms in (0, 1): two per block, indices as above.
  double uniform(std::uint64_t index) const noexcept;

  SeedSpec seed() const noexcept { return seed_; }

 private:
  PhiloxBlock block(std::uint64_t j) const noexcept;

  SeedSpec seed_;
};

}  // namespace itocx
