#include "typesql/numkernel/param_store.hpp"

#include <algorithm>
#include <cmath>

#include "typesql/numkernel/error.hpp"

namespace typesql {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<std::size_t> s, bool rg)
    : shape(std::move(s)), data(shape_numel(shape), 0.0), requires_grad(rg) {
  if (shape.empty() || shape.size() > 2) throw Error("tensor rank must be 1 or 2");
  for (auto d : shape)
    if (d == 0) throw Error("tensor dimensions must be positive");
}

Matrix Tensor::as_matrix() const { return Matrix(rows(), cols(), data); }

void Tensor::assign(const Matrix& m) {
  if (m.size() != data.size() || m.rows() != rows() || m.cols() != cols()) {
    throw Error("tensor assign: shape mismatch with " + shape_string(shape));
  }
  data = m.data();
}

void Tensor::zero_grad() {
  if (requires_grad) grad.assign(data.size(), 0.0);
}

Tensor& ParamStore::insert(const std::string& name, Tensor t) {
  auto [it, inserted] = entries_.emplace(name, std::move(t));
  if (!inserted) throw Error("duplicate parameter name: " + name);
  return it->second;
}

Tensor& ParamStore::add_uniform(const std::string& name, std::vector<std::size_t> shape,
                                std::size_t fan_in) {
  Tensor t(std::move(shape));
  const double a = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
  std::uniform_real_distribution<double> dist(-a, a);
  for (auto& v : t.data) v = dist(rng_);
  return insert(name, std::move(t));
}

Tensor& ParamStore::add_zeros(const std::string& name, std::vector<std::size_t> shape) {
  return insert(name, Tensor(std::move(shape)));
}

Tensor& ParamStore::at(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error("unknown parameter: " + name);
  return it->second;
}

const Tensor& ParamStore::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error("unknown parameter: " + name);
  return it->second;
}

std::size_t ParamStore::total_numel() const {
  std::size_t n = 0;
  for (const auto& [_, t] : entries_) n += t.numel();
  return n;
}

void ParamStore::zero_grad() {
  for (auto& [_, t] : entries_) t.zero_grad();
}

void ParamStore::fill(double v) {
  for (auto& [_, t] : entries_) std::fill(t.data.begin(), t.data.end(), v);
}

void ParamStore::round_to_float() {
  for (auto& [_, t] : entries_)
    for (auto& v : t.data) v = static_cast<double>(static_cast<float>(v));
}

}  // namespace typesql
