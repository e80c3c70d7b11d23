#include "typesql/numkernel/tape.hpp"

#include "typesql/numkernel/error.hpp"

namespace typesql {

const Matrix& Var::value() const { return tape_->value(id_); }

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(Matrix value) {
  Node n;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::param(Tensor& tensor) {
  if (auto it = bound_.find(&tensor); it != bound_.end()) return Var(this, it->second);
  Node n;
  n.value = tensor.as_matrix();
  n.param = &tensor;
  n.needs_grad = tensor.requires_grad && grad_enabled_;
  if (n.needs_grad && tensor.grad.size() != tensor.data.size()) tensor.zero_grad();
  Var v = push(std::move(n));
  bound_.emplace(&tensor, v.id());
  return v;
}

Var Tape::record(Matrix value, std::initializer_list<Var> inputs, BackwardFn fn) {
  Node n;
  n.value = std::move(value);
  for (const Var& in : inputs) {
    if (&in.tape() != this) throw Error("tape: input recorded on a different tape");
    n.needs_grad = n.needs_grad || nodes_[in.id()].needs_grad;
  }
  if (n.needs_grad) n.backward = std::move(fn);
  return push(std::move(n));
}

Var Tape::record(Matrix value, const std::vector<Var>& inputs, BackwardFn fn) {
  Node n;
  n.value = std::move(value);
  for (const Var& in : inputs) {
    if (&in.tape() != this) throw Error("tape: input recorded on a different tape");
    n.needs_grad = n.needs_grad || nodes_[in.id()].needs_grad;
  }
  if (n.needs_grad) n.backward = std::move(fn);
  return push(std::move(n));
}

Matrix& Tape::accum(std::size_t id) {
  Node& n = nodes_[id];
  if (n.grad.empty()) n.grad = Matrix(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::backward(Var loss) {
  if (backward_done_) throw Error("backward called twice without reset");
  if (&loss.tape() != this) throw Error("backward: loss belongs to a different tape");
  if (loss.value().size() != 1) throw Error("backward: loss must be a scalar");
  backward_done_ = true;
  accum(loss.id())[0] = 1.0;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.needs_grad || n.grad.empty()) continue;
    if (n.backward) n.backward(*this, i);
    if (n.param != nullptr) {
      auto& g = n.param->grad;
      for (std::size_t k = 0; k < g.size(); ++k) g[k] += n.grad[k];
    }
  }
}

void Tape::reset() {
  nodes_.clear();
  bound_.clear();
  backward_done_ = false;
}

void backward(ParamStore& store, Var loss) {
  store.zero_grad();
  loss.tape().backward(loss);
}

}  // namespace typesql
