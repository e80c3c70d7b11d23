#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "typesql/encoder/embeddings.hpp"
#include "typesql/execeval/metrics.hpp"
#include "typesql/harness/config.hpp"
#include "typesql/harness/dataset.hpp"
#include "typesql/slots/model.hpp"
#include "typesql/sqlgen/sql_query.hpp"
#include "typesql/typerec/gazetteer.hpp"
#include "typesql/typerec/recognizer.hpp"

namespace typesql {

/// Shared resources for turning a raw question into encoder input.
struct Resources {
  EmbeddingStore embeddings;
  Gazetteer gazetteer;
};

/// Loads the embedding files and (optional) gazetteer named in the config.
Resources load_resources(const TrainConfig& config);

EncoderInput prepare_question(const std::string& question, const Table& table, TypingMode mode,
                              const Resources& res);

/// Type recognition, encoding, slot prediction and assembly for one question.
SqlQuery predict_query(TypeSqlModel& model, const std::string& question, const Table& table,
                       const Resources& res);

/// Builds a model from the config (word_dim taken from the embeddings) and
/// fills it from the checkpoint. A missing checkpoint file is an error.
TypeSqlModel load_model(const TrainConfig& config, const Resources& res,
                        const std::filesystem::path& checkpoint);

std::vector<SqlQuery> predict_dataset(TypeSqlModel& model, const Dataset& data, const Resources& res);
Metrics evaluate_predictions(const std::vector<SqlQuery>& preds, const Dataset& data);

}  // namespace typesql
