#include <omp.h>

#include <cstdint>
#include <exception>

#include "itocx/kernels.hpp"

namespace itocx::kernels::omp {

void for_each_index(std::size_t begin, std::size_t end, int workers, const IndexBody& body) {
  if (end <= begin) return;
  const auto count = static_cast<std::int64_t>(end - begin);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t j = 0; j < count; ++j) {
    try {
      body(begin + static_cast<std::size_t>(j));
    } catch (...) {
#pragma omp critical(itocx_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace itocx::kernels::omp
