#include "typesql/numkernel/grad_check.hpp"

namespace typesql {

GradientMap finite_diff_grad(const std::function<double(ParamStore&)>& f, ParamStore& store,
                             double eps) {
  GradientMap out;
  for (auto& [name, tensor] : store.entries()) {
    if (!tensor.requires_grad) continue;
    std::vector<double>& g = out[name];
    g.resize(tensor.numel());
    for (std::size_t k = 0; k < tensor.numel(); ++k) {
      const double saved = tensor.data[k];
      tensor.data[k] = saved + eps;
      const double up = f(store);
      tensor.data[k] = saved - eps;
      const double down = f(store);
      tensor.data[k] = saved;
      g[k] = (up - down) / (2.0 * eps);
    }
  }
  return out;
}

GradientMap collect_gradients(const ParamStore& store) {
  GradientMap out;
  for (const auto& [name, tensor] : store.entries()) {
    if (!tensor.requires_grad) continue;
    out[name] = tensor.grad.empty() ? std::vector<double>(tensor.numel(), 0.0) : tensor.grad;
  }
  return out;
}

}  // namespace typesql
