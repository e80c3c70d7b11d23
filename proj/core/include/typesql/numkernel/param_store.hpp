#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "typesql/numkernel/matrix.hpp"

namespace typesql {

/// Named trainable array. Rank 1 tensors are viewed as 1×n rows, rank 2 as r×c.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty when absent
  bool requires_grad = true;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, bool requires_grad = true);

  std::size_t numel() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }
  std::size_t rows() const { return shape.size() == 2 ? shape[0] : 1; }
  std::size_t cols() const { return shape.empty() ? 1 : shape.back(); }

  Matrix as_matrix() const;
  void assign(const Matrix& m);
  void zero_grad();
};

std::size_t shape_numel(const std::vector<std::size_t>& shape);
std::string shape_string(const std::vector<std::size_t>& shape);

/// Owns every trainable tensor of a model. Iteration is ordered by name.
class ParamStore {
 public:
  explicit ParamStore(std::uint64_t seed = 0) : rng_seed_(seed), rng_(seed) {}

  /// Registers a tensor initialised uniform(-a, a) with a = 1/sqrt(fan_in).
  Tensor& add_uniform(const std::string& name, std::vector<std::size_t> shape,
                      std::size_t fan_in);
  Tensor& add_zeros(const std::string& name, std::vector<std::size_t> shape);

  Tensor& at(const std::string& name);
  const Tensor& at(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.contains(name); }

  std::map<std::string, Tensor>& entries() { return entries_; }
  const std::map<std::string, Tensor>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t total_numel() const;

  std::uint64_t rng_seed() const { return rng_seed_; }

  void zero_grad();
  void fill(double v);
  /// Rounds every entry to the nearest 32-bit float.
  void round_to_float();

 private:
  Tensor& insert(const std::string& name, Tensor t);

  std::map<std::string, Tensor> entries_;
  std::uint64_t rng_seed_;
  std::mt19937_64 rng_;
};

}  // namespace typesql
