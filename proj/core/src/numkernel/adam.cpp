#include "typesql/numkernel/adam.hpp"

#include <cmath>

#include "typesql/numkernel/error.hpp"

namespace typesql {

void adam_step(ParamStore& store, AdamState& state) {
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (auto& [name, tensor] : store.entries()) {
    if (!tensor.requires_grad) continue;
    auto [it, fresh] = state.moments.try_emplace(name);
    AdamMoments& mom = it->second;
    if (fresh) {
      mom.m.assign(tensor.numel(), 0.0);
      mom.v.assign(tensor.numel(), 0.0);
    } else if (mom.m.size() != tensor.numel()) {
      throw Error("adam_step: shape drift on parameter " + name);
    }
    if (tensor.grad.empty()) continue;
    if (tensor.grad.size() != tensor.numel()) {
      throw Error("adam_step: gradient size mismatch on parameter " + name);
    }
    for (std::size_t k = 0; k < tensor.numel(); ++k) {
      const double g = tensor.grad[k];
      mom.m[k] = state.beta1 * mom.m[k] + (1.0 - state.beta1) * g;
      mom.v[k] = state.beta2 * mom.v[k] + (1.0 - state.beta2) * g * g;
      const double m_hat = mom.m[k] / bc1;
      const double v_hat = mom.v[k] / bc2;
      tensor.data[k] -= state.lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace typesql
