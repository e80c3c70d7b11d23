#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace typesql {

/// Frozen pretrained word vectors. Unknown words map to the zero vector.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim), zero_(dim, 0.0) {}

  /// Text format: `token v1 ... vd` per line, space separated. Every line
  /// must have the same d. Keys are lowercased; the first occurrence wins.
  static EmbeddingStore load(std::istream& in, const std::string& source = "<stream>");
  static EmbeddingStore load_file(const std::filesystem::path& path);
  /// Per-token concatenation; a token missing from one side is zero-padded there.
  static EmbeddingStore concat(const EmbeddingStore& first, const EmbeddingStore& second);

  void add(const std::string& token, std::vector<double> vec);
  std::span<const double> lookup(const std::string& token) const;
  bool contains(const std::string& token) const { return vectors_.contains(token); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::unordered_map<std::string, std::vector<double>>& vectors() const { return vectors_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> zero_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// One file, or two files concatenated per token.
EmbeddingStore load_embeddings(const std::vector<std::filesystem::path>& paths);

}  // namespace typesql
