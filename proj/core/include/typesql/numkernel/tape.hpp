#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <unordered_map>
#include <vector>

#include "typesql/numkernel/matrix.hpp"
#include "typesql/numkernel/param_store.hpp"

namespace typesql {

class Tape;

/// Handle to a node recorded on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

  const Matrix& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  double scalar() const { return value()[0]; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Reverse-mode differentiation tape. Rebuilt per example or batch.
///
/// Parameter leaves bind a Tensor from a ParamStore; backward() accumulates
/// into Tensor::grad, so several tapes can contribute to one batch gradient.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  explicit Tape(bool training = false, std::uint64_t seed = 0)
      : training_(training), rng_(seed) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  /// Leaf bound to a stored tensor; repeated calls return the same node.
  Var param(Tensor& tensor);
  Var record(Matrix value, std::initializer_list<Var> inputs, BackwardFn fn);
  Var record(Matrix value, const std::vector<Var>& inputs, BackwardFn fn);

  const Matrix& value(std::size_t id) const { return nodes_[id].value; }
  /// Gradient flowing into node `id`; valid inside a BackwardFn for `self`.
  const Matrix& grad(std::size_t id) const { return nodes_[id].grad; }
  /// Lazily zero-initialised gradient accumulator of an input node.
  Matrix& accum(std::size_t id);
  bool needs_grad(std::size_t id) const { return nodes_[id].needs_grad; }

  void backward(Var loss);
  void reset();

  /// With gradients disabled, parameter leaves record no backward work.
  void set_grad_enabled(bool on) { grad_enabled_ = on; }
  bool grad_enabled() const { return grad_enabled_; }

  bool training() const { return training_; }
  void set_training(bool on) { training_ = on; }
  std::mt19937_64& rng() { return rng_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    BackwardFn backward;
    Tensor* param = nullptr;
    bool needs_grad = false;
  };

  Var push(Node node);

  std::vector<Node> nodes_;
  std::unordered_map<const Tensor*, std::size_t> bound_;
  bool training_;
  bool backward_done_ = false;
  bool grad_enabled_ = true;
  std::mt19937_64 rng_;
};

/// Zeroes the store's gradients, then back-propagates `loss` into them.
void backward(ParamStore& store, Var loss);

}  // namespace typesql
