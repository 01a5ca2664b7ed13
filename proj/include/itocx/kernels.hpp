#pragma once

// Data-parallel Monte Carlo kernels. Each index writes only its own output
// slot and every draw is addressed by (seed, index), so the serial and the
// OpenMP variants produce bit-identical results for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "itocx/paths.hpp"
#include "itocx/rng.hpp"

namespace itocx::kernels {

enum class Execution { serial, parallel };

struct Policy {
  Execution execution = Execution::parallel;
  /// 0 selects default_workers().
  int workers = 0;
};

/// Available parallelism, capped by ITOCX_MAX_WORKERS when set.
int default_workers();

using IndexBody = std::function<void(std::size_t)>;

namespace serial {
void for_each_index(std::size_t begin, std::size_t end, const IndexBody& body);
}

namespace omp {
/// Static schedule. The first exception thrown by any body is rethrown
/// after the loop.
void for_each_index(std::size_t begin, std::size_t end, int workers, const IndexBody& body);
}

void for_each_index(std::size_t begin, std::size_t end, const Policy& policy,
                    const IndexBody& body);

/// out[i] = transform(Z_{first + i}) for the standard normals of `seed`.
/// Work is split into fixed blocks so each block fills its normals in pairs.
void transform_normals(SeedSpec seed, std::uint64_t first, std::span<double> out,
                       const std::function<double(double)>& transform, const Policy& policy);

/// Runs body(i, path_i) for i in [begin, end), path_i = sample_wiener(grid,
/// {root, i}).
void for_each_path(const TimeGrid& grid, std::uint64_t root, std::size_t begin, std::size_t end,
                   const Policy& policy,
                   const std::function<void(std::size_t, const SamplePath&)>& body);

}  // namespace itocx::kernels
