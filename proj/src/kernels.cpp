#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "itocx/kernels.hpp"

namespace itocx::kernels {
namespace {

constexpr std::size_t kNormalBlock = 4096;

}  // namespace

int default_workers() {
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("ITOCX_MAX_WORKERS")) {
    try {
      const int limit = std::stoi(cap);
      if (limit > 0) workers = std::min(workers, limit);
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
  return workers;
}

namespace serial {

void for_each_index(std::size_t begin, std::size_t end, const IndexBody& body) {
  for (std::size_t i = begin; i < end; ++i) body(i);
}

}  // namespace serial

void for_each_index(std::size_t begin, std::size_t end, const Policy& policy,
                    const IndexBody& body) {
  const int workers = policy.workers > 0 ? policy.workers : default_workers();
  if (policy.execution == Execution::serial || workers == 1) {
    serial::for_each_index(begin, end, body);
  } else {
    omp::for_each_index(begin, end, workers, body);
  }
}

void transform_normals(SeedSpec seed, std::uint64_t first, std::span<double> out,
                       const std::function<double(double)>& transform, const Policy& policy) {
  const NormalStream normals(seed);
  const std::size_t blocks = (out.size() + kNormalBlock - 1) / kNormalBlock;
  for_each_index(0, blocks, policy, [&](std::size_t b) {
    const std::size_t lo = b * kNormalBlock;
    const std::size_t hi = std::min(out.size(), lo + kNormalBlock);
    auto chunk = out.subspan(lo, hi - lo);
    normals.fill(first + lo, chunk);
    for (double& v : chunk) v = transform(v);
  });
}

void for_each_path(const TimeGrid& grid, std::uint64_t root, std::size_t begin, std::size_t end,
                   const Policy& policy,
                   const std::function<void(std::size_t, const SamplePath&)>& body) {
  for_each_index(begin, end, policy, [&](std::size_t i) {
    const SamplePath path = sample_wiener(grid, SeedSpec{root, i});
    body(i, path);
  });
}

}  // namespace itocx::kernels
