#include "itocx/integrate.hpp"

#include <stdexcept>
#include <string>

namespace itocx {

double ito_lemma_residual(const SamplePath& path, const AntiderivativeTable& table) {
  const PathIntegralResult stochastic = ito_left_sum(path, kTransformIntegrand);
  const PathIntegralResult correction = time_left_sum(path, kTransformDerivativeIntegrand);
  if (stochastic.overflow || correction.overflow) {
    const auto node = stochastic.overflow ? stochastic.offending_node : correction.offending_node;
    throw std::range_error("ito_lemma_residual: integrand out of range at node " +
                           std::to_string(node.value_or(0)));
  }
  const double increment = table(path.back()) - table(path.values().front());
  return increment - stochastic.value - 0.5 * correction.value;
}

}  // namespace itocx
