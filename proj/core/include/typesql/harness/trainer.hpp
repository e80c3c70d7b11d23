#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "typesql/execeval/metrics.hpp"
#include "typesql/harness/config.hpp"
#include "typesql/harness/dataset.hpp"
#include "typesql/harness/predictor.hpp"
#include "typesql/numkernel/adam.hpp"
#include "typesql/slots/model.hpp"

namespace typesql {

/// An example with its tagging and encoder input computed once up front.
struct PreparedExample {
  EncoderInput input;
  SlotTargets targets;
  SqlQuery gold;
  const Table* table = nullptr;
};

std::vector<PreparedExample> prepare_examples(const Dataset& data, TypingMode mode,
                                              const Resources& res);
/// Prepared examples point into `data.tables`, so it must outlive them.
std::vector<PreparedExample> prepare_examples(Dataset&& data, TypingMode mode, const Resources& res) = delete;

/// Teacher-forced loss of one example; with `tape` training off this is a
/// deterministic function of the parameters.
Var example_loss(Tape& tape, TypeSqlModel& model, const PreparedExample& ex);
double example_loss_value(TypeSqlModel& model, const PreparedExample& ex);

/// Inference-mode metrics over prepared examples.
Metrics evaluate_prepared(TypeSqlModel& model, const std::vector<PreparedExample>& data);

struct EpochLog {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  std::optional<double> dev_qm;
  std::optional<double> train_qm;
};

struct TrainResult {
  std::vector<EpochLog> log;
  std::optional<double> best_dev_qm;
  std::size_t best_epoch = 0;
};

/// Seeded mini-batch training with Adam. When a dev set is given, the
/// parameters with the best dev Acc_qm are restored at the end and written
/// to the configured checkpoint; otherwise the last parameters are kept.
class Trainer {
 public:
  Trainer(TrainConfig config, TypeSqlModel& model);

  TrainResult train(const std::vector<PreparedExample>& train_set,
                    const std::vector<PreparedExample>* dev_set = nullptr,
                    std::ostream* log = nullptr);

  const AdamState& optimizer() const { return adam_; }

 private:
  TrainConfig config_;
  TypeSqlModel& model_;
  AdamState adam_;
};

struct TrainingRun {
  TrainResult result;
  Metrics train_metrics;
  std::optional<Metrics> dev_metrics;
};

/// Loads data and resources named in the config, trains, writes the
/// checkpoint (and `<checkpoint>.json` holding the config) when a checkpoint
/// path is set.
TrainingRun run_training(const TrainConfig& config, std::ostream* log = nullptr);

}  // namespace typesql
