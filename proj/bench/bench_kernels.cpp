// Serial reference vs OpenMP kernels on the two hot loops: transforming
// direct normal draws and integrating h^2 along Wiener paths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "itocx/integrate.hpp"
#include "itocx/kernels.hpp"
#include "itocx/transform.hpp"

namespace {

using itocx::kernels::Execution;
using itocx::kernels::Policy;

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double checksum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n_samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000000;
  const std::size_t n_paths = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;
  const int workers = itocx::kernels::default_workers();
  const itocx::SeedSpec seed{7, 0};

  std::printf("workers: %d\n", workers);
  for (Execution mode : {Execution::serial, Execution::parallel}) {
    const Policy policy{mode, workers};
    const char* label = mode == Execution::serial ? "serial" : "openmp";

    std::vector<double> out(n_samples);
    const double t_samples = time_ms([&] {
      itocx::kernels::transform_normals(seed, 0, out, [](double z) { return itocx::h(z); }, policy);
    });

    std::vector<double> integrals(n_paths);
    const itocx::TimeGrid grid = itocx::TimeGrid::uniform(2.0, 1024);
    const double t_paths = time_ms([&] {
      itocx::kernels::for_each_path(grid, 11, 0, n_paths, policy,
                                    [&](std::size_t i, const itocx::SamplePath& path) {
        integrals[i] = itocx::pathwise_l2_functional(path, itocx::kTransformIntegrand).value;
      });
    });

    std::printf("%-7s h(Z) x %zu: %9.1f ms (checksum %.17g)\n", label, n_samples, t_samples,
                checksum(out));
    std::printf("%-7s l2(h) x %zu paths x 1024: %9.1f ms (checksum %.17g)\n", label, n_paths,
                t_paths, checksum(integrals));
  }
  return 0;
}
