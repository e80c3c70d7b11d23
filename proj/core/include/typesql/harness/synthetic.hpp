#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "typesql/encoder/embeddings.hpp"
#include "typesql/harness/dataset.hpp"
#include "typesql/typerec/gazetteer.hpp"

namespace typesql {

struct SyntheticOptions {
  std::uint64_t seed = 7;
  std::size_t train_per_table = 24;
  std::size_t dev_per_table = 8;
  std::size_t rows_per_table = 8;
  std::size_t embedding_dim = 50;
};

/// Template-generated questions over a fixed set of toy schemas, with random
/// word vectors standing in for pretrained embeddings.
struct SyntheticCorpus {
  TableMap tables;
  std::vector<Example> train;
  std::vector<Example> dev;  // fresh template instances, disjoint questions from train
  EmbeddingStore embeddings;
  std::vector<std::pair<std::string, std::string>> gazetteer_entries;  // key, category

  Gazetteer gazetteer() const;
};

SyntheticCorpus generate_synthetic(const SyntheticOptions& options = {});

/// Writes train.jsonl, dev.jsonl, tables.jsonl, embeddings.txt and
/// gazetteer.tsv into `dir`.
void write_synthetic(const std::filesystem::path& dir, const SyntheticCorpus& corpus);

}  // namespace typesql
