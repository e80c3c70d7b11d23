#include "typesql/harness/predictor.hpp"

#include "typesql/numkernel/checkpoint.hpp"
#include "typesql/numkernel/error.hpp"

namespace typesql {

Resources load_resources(const TrainConfig& config) {
  if (config.embeddings.empty()) throw Error("config lists no embedding files");
  Resources res;
  std::vector<std::filesystem::path> paths(config.embeddings.begin(), config.embeddings.end());
  res.embeddings = load_embeddings(paths);
  if (!config.gazetteer.empty()) res.gazetteer = Gazetteer::load_file(config.gazetteer);
  return res;
}

EncoderInput prepare_question(const std::string& question, const Table& table, TypingMode mode,
                              const Resources& res) {
  TaggedQuestion tq = recognize(question, table.schema, &table, mode, &res.gazetteer);
  return prepare_input(std::move(tq), table.schema, res.embeddings);
}

SqlQuery predict_query(TypeSqlModel& model, const std::string& question, const Table& table,
                       const Resources& res) {
  const EncoderInput input = prepare_question(question, table, model.config().mode, res);
  const SlotPrediction pred = model.predict(input);
  return assemble(pred, input.question.tokens);
}

TypeSqlModel load_model(const TrainConfig& config, const Resources& res,
                        const std::filesystem::path& checkpoint) {
  if (!std::filesystem::exists(checkpoint)) {
    throw Error("checkpoint not found: " + checkpoint.string());
  }
  ModelConfig mc = config.model;
  mc.word_dim = res.embeddings.dim();
  TypeSqlModel model(mc, config.seed);
  load_checkpoint(checkpoint, model.params());
  return model;
}

std::vector<SqlQuery> predict_dataset(TypeSqlModel& model, const Dataset& data, const Resources& res) {
  std::vector<SqlQuery> out;
  out.reserve(data.examples.size());
  for (const auto& e : data.examples) {
    auto it = data.tables.find(e.table_id);
    if (it == data.tables.end()) throw Error("unknown table id: " + e.table_id);
    out.push_back(predict_query(model, e.question, it->second, res));
  }
  return out;
}

Metrics evaluate_predictions(const std::vector<SqlQuery>& preds, const Dataset& data) {
  std::vector<SqlQuery> golds;
  std::vector<std::string> ids;
  for (const auto& e : data.examples) {
    golds.push_back(e.gold);
    ids.push_back(e.table_id);
  }
  return evaluate_dataset(preds, golds, ids, data.tables);
}

}  // namespace typesql
