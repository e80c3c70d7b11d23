#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "typesql/numkernel/param_store.hpp"

namespace typesql {

using GradientMap = std::map<std::string, std::vector<double>>;

/// Central differences (f(p+eps) − f(p−eps)) / (2·eps), one scalar at a time.
/// `f` must be deterministic; the store is restored before returning.
GradientMap finite_diff_grad(const std::function<double(ParamStore&)>& f, ParamStore& store,
                             double eps = 1e-5);

/// Copies Tensor::grad out of the store.
GradientMap collect_gradients(const ParamStore& store);

}  // namespace typesql
