#include "itocx/rng.hpp"

#include <cmath>
#include <numbers>

namespace itocx {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// 53 random bits -> [0, 1).
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SeedSpec SeedSpec::derive(std::uint64_t tag) const noexcept {
  return {splitmix64(root ^ splitmix64(tag + 0x632BE59BD9B4E019ull)), stream};
}

PhiloxBlock philox4x32(PhiloxBlock ctr, std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

PhiloxBlock NormalStream::block(std::uint64_t j) const noexcept {
  const PhiloxBlock counter{static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32),
                            static_cast<std::uint32_t>(seed_.stream),
                            static_cast<std::uint32_t>(seed_.stream >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_.root),
                                         static_cast<std::uint32_t>(seed_.root >> 32)};
  return philox4x32(counter, key);
}

double NormalStream::uniform(std::uint64_t index) const noexcept {
  const PhiloxBlock b = block(index >> 1);
  const double u = (index & 1u) ? to_unit(b[2], b[3]) : to_unit(b[0], b[1]);
  // Shift [0, 1) onto (0, 1) by using the midpoint of each 2^-53 cell.
  return u + 0x1.0p-54;
}

double NormalStream::operator()(std::uint64_t index) const noexcept {
  const PhiloxBlock b = block(index >> 1);
  const double radius = std::sqrt(-2.0 * std::log(1.0 - to_unit(b[0], b[1])));
  const double angle = 2.0 * std::numbers::pi * to_unit(b[2], b[3]);
  return radius * ((index & 1u) ? std::sin(angle) : std::cos(angle));
}

void NormalStream::fill(std::uint64_t first, std::span<double> out) const noexcept {
  std::size_t i = 0;
  if ((first & 1u) && !out.empty()) {
    out[i++] = (*this)(first);
  }
  for (; i + 1 < out.size(); i += 2) {
    const PhiloxBlock b = block((first + i) >> 1);
    const double radius = std::sqrt(-2.0 * std::log(1.0 - to_unit(b[0], b[1])));
    const double angle = 2.0 * std::numbers::pi * to_unit(b[2], b[3]);
    out[i] = radius * std::cos(angle);
    out[i + 1] = radius * std::sin(angle);
  }
  if (i < out.size()) out[i] = (*this)(first + i);
}

}  // namespace itocx
