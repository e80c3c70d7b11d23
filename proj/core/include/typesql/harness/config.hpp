#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "typesql/slots/model.hpp"

namespace typesql {

struct TrainConfig {
  ModelConfig model;
  std::size_t batch_size = 64;
  double learning_rate = 1e-3;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;
  /// Dev Acc_qm is computed every this many epochs (and on the last one).
  std::size_t eval_every = 1;
  /// Stop once training-set Acc_qm reaches this value; 0 disables the check.
  double stop_at_train_qm = 0.0;

  std::vector<std::string> embeddings;
  std::string gazetteer;
  std::string train_examples;
  std::string train_tables;
  std::string dev_examples;
  std::string dev_tables;
  std::string checkpoint;

  /// Throws unless batch ≥ 1, dropout ∈ [0,1) and the model dims are valid.
  void validate() const;
};

/// Reads a JSON object; absent keys keep their defaults and relative paths
/// are resolved against the config file's directory.
TrainConfig load_config(const std::filesystem::path& path);
TrainConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
std::string config_json(const TrainConfig& config);
void save_config(const std::filesystem::path& path, const TrainConfig& config);

}  // namespace typesql
