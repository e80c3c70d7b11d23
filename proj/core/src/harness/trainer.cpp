#include "typesql/harness/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "typesql/harness/loss.hpp"
#include "typesql/numkernel/checkpoint.hpp"
#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"

namespace typesql {

std::vector<PreparedExample> prepare_examples(const Dataset& data, TypingMode mode,
                                              const Resources& res) {
  std::vector<PreparedExample> out;
  out.reserve(data.examples.size());
  for (const auto& e : data.examples) {
    auto it = data.tables.find(e.table_id);
    if (it == data.tables.end()) throw Error("unknown table id: " + e.table_id);
    PreparedExample p;
    p.input = prepare_question(e.question, it->second, mode, res);
    p.targets = make_targets(e.gold, p.input.question.tokens);
    p.gold = e.gold;
    p.table = &it->second;
    out.push_back(std::move(p));
  }
  return out;
}

Var example_loss(Tape& tape, TypeSqlModel& model, const PreparedExample& ex) {
  return total_loss(model.score(tape, ex.input, ex.targets), ex.targets);
}

double example_loss_value(TypeSqlModel& model, const PreparedExample& ex) {
  Tape tape(false);
  tape.set_grad_enabled(false);
  return example_loss(tape, model, ex).scalar();
}

Metrics evaluate_prepared(TypeSqlModel& model, const std::vector<PreparedExample>& data) {
  Metrics total;
  for (const auto& ex : data) {
    const SqlQuery pred = assemble(model.predict(ex.input), ex.input.question.tokens);
    total.add(evaluate_example(pred, ex.gold, *ex.table));
  }
  return total;
}

Trainer::Trainer(TrainConfig config, TypeSqlModel& model) : config_(std::move(config)), model_(model) {
  config_.validate();
  adam_.lr = config_.learning_rate;
}

TrainResult Trainer::train(const std::vector<PreparedExample>& train_set,
                           const std::vector<PreparedExample>* dev_set, std::ostream* log) {
  TrainResult result;
  if (train_set.empty()) throw Error("training set is empty");
  ParamStore& params = model_.params();
  std::mt19937_64 rng(config_.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::map<std::string, Tensor> best;

  for (std::size_t epoch = 1; epoch <= config_.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config_.batch_size) {
      const std::size_t end = std::min(order.size(), start + config_.batch_size);
      const double inv = 1.0 / static_cast<double>(end - start);
      params.zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        Tape tape(true, rng());
        Var loss = example_loss(tape, model_, train_set[order[k]]);
        loss_sum += loss.scalar();
        tape.backward(scale(loss, inv));
      }
      adam_step(params, adam_);
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(train_set.size());
    const bool eval_now = epoch % config_.eval_every == 0 || epoch == config_.epochs;
    if (eval_now && dev_set != nullptr && !dev_set->empty()) {
      entry.dev_qm = evaluate_prepared(model_, *dev_set).acc_qm();
      if (!result.best_dev_qm || *entry.dev_qm > *result.best_dev_qm) {
        result.best_dev_qm = entry.dev_qm;
        result.best_epoch = epoch;
        best = params.entries();
      }
    }
    if (eval_now && config_.stop_at_train_qm > 0.0) {
      entry.train_qm = evaluate_prepared(model_, train_set).acc_qm();
    }
    if (log != nullptr) {
      *log << "epoch " << epoch << " loss " << entry.train_loss;
      if (entry.dev_qm) *log << " dev_acc_qm " << *entry.dev_qm;
      if (entry.train_qm) *log << " train_acc_qm " << *entry.train_qm;
      *log << '\n';
    }
    result.log.push_back(entry);
    if (entry.train_qm && *entry.train_qm >= config_.stop_at_train_qm) break;
  }

  if (!best.empty()) {
    for (auto& [name, tensor] : params.entries()) tensor.data = best.at(name).data;
  } else {
    result.best_epoch = result.log.back().epoch;
  }
  if (!config_.checkpoint.empty()) save_checkpoint(config_.checkpoint, params);
  return result;
}

TrainingRun run_training(const TrainConfig& config, std::ostream* log) {
  config.validate();
  if (config.train_examples.empty() || config.train_tables.empty()) {
    throw Error("config must name train_examples and train_tables");
  }
  const Resources res = load_resources(config);
  const Dataset train_data = load_dataset(config.train_examples, config.train_tables);
  std::optional<Dataset> dev_data;
  if (!config.dev_examples.empty()) {
    dev_data = load_dataset(config.dev_examples,
                            config.dev_tables.empty() ? config.train_tables : config.dev_tables);
  }
  ModelConfig mc = config.model;
  mc.word_dim = res.embeddings.dim();
  TypeSqlModel model(mc, config.seed);

  const auto train_set = prepare_examples(train_data, mc.mode, res);
  std::vector<PreparedExample> dev_set;
  if (dev_data) dev_set = prepare_examples(*dev_data, mc.mode, res);

  TrainConfig effective = config;
  effective.model = mc;
  Trainer trainer(effective, model);
  TrainingRun run;
  run.result = trainer.train(train_set, dev_data ? &dev_set : nullptr, log);
  run.train_metrics = evaluate_prepared(model, train_set);
  if (dev_data) run.dev_metrics = evaluate_prepared(model, dev_set);
  if (!config.checkpoint.empty()) save_config(config.checkpoint + ".json", effective);
  return run;
}

}  // namespace typesql
