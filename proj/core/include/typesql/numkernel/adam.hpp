#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "typesql/numkernel/param_store.hpp"

namespace typesql {

struct AdamMoments {
  std::vector<double> m;
  std::vector<double> v;
};

/// Optimiser state; defaults are the usual Adam hyperparameters.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t step_count = 0;
  std::map<std::string, AdamMoments> moments;
};

/// One bias-corrected Adam update over every tensor with requires_grad.
/// Throws if a parameter's size changed since the moments were created.
void adam_step(ParamStore& store, AdamState& state);

}  // namespace typesql
