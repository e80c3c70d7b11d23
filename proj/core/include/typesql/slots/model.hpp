#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typesql/encoder/encoder.hpp"
#include "typesql/numkernel/matrix.hpp"
#include "typesql/numkernel/param_store.hpp"
#include "typesql/numkernel/tape.hpp"
#include "typesql/slots/predictors.hpp"
#include "typesql/typerec/recognizer.hpp"

namespace typesql {

inline constexpr std::size_t kMaxConditions = 4;
inline constexpr std::size_t kAggCount = 6;
inline constexpr std::size_t kOpCount = 3;
inline constexpr std::array<std::string_view, kAggCount> kAggNames = {"", "MAX", "MIN",
                                                                      "COUNT", "SUM", "AVG"};
inline constexpr std::array<std::string_view, kOpCount> kOpNames = {"=", ">", "<"};

struct ModelConfig {
  std::size_t word_dim = 50;
  std::size_t type_dim = 30;  // replaced by word_dim in content mode
  std::size_t hidden = 120;   // bidirectional width; each direction gets hidden/2
  double dropout = 0.3;
  std::size_t max_value_len = 20;
  TypingMode mode = TypingMode::Insensitive;

  std::size_t effective_type_dim() const {
    return mode == TypingMode::Content ? word_dim : type_dim;
  }
  std::size_t input_dim() const { return word_dim + effective_type_dim(); }
  void validate() const;
};

struct SlotPrediction {
  std::size_t select_col = 0;
  std::size_t agg = 0;
  std::size_t cond_count = 0;
  std::vector<std::size_t> cond_cols;
  std::vector<std::size_t> cond_ops;
  std::vector<std::vector<std::size_t>> cond_val_spans;

  /// Throws when the parallel-list, bound or duplicate rules are broken.
  void check(std::size_t column_count, std::size_t token_count) const;
};

/// Gold antecedents and labels for a teacher-forced pass.
struct SlotTargets {
  std::size_t select_col = 0;
  std::size_t agg = 0;
  std::vector<std::size_t> cond_cols;
  std::vector<std::size_t> cond_ops;
  /// Token positions of each value; nullopt when the value is not a
  /// contiguous span of the question (its pointer loss is skipped).
  std::vector<std::optional<std::vector<std::size_t>>> cond_val_spans;
};

/// Teacher-forced scores for every slot, as consumed by the training loss.
struct SlotScores {
  Var select_col;                            // 1×C
  Var cond_number;                           // 1×5
  Var cond_cols;                             // 1×C
  Var agg;                                   // 1×6
  std::vector<Var> ops;                      // per gold condition, 1×3
  std::vector<std::vector<Var>> pointer;     // per gold condition, per step, 1×(T+1)
  std::vector<std::vector<std::size_t>> pointer_targets;
};

/// Encoder outputs and column attention for one of the three sub-models.
struct SubModelEncoding {
  Var H_qt;
  Var H_col;
  Attention attention;
};

struct ModelEncoding {
  Var embedded;  // T × input_dim
  SubModelEncoding col;
  SubModelEncoding agg;
  SubModelEncoding opval;
};

/// The three slot-filling models. MODEL_COL predicts the select column, the
/// condition count and the condition columns; MODEL_AGG the aggregator;
/// MODEL_OPVAL the operators and values. Each owns its own question and
/// column bi-LSTMs; only the type embedding table is shared.
class TypeSqlModel {
 public:
  explicit TypeSqlModel(ModelConfig config, std::uint64_t seed = 0);

  const ModelConfig& config() const { return config_; }
  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }

  ModelEncoding encode(Tape& tape, const EncoderInput& input);
  SlotScores score(Tape& tape, const EncoderInput& input, const SlotTargets& gold);
  SlotPrediction predict(const EncoderInput& input);

  /// Greedy pointer decoding for one condition column. `H_qt` and `H_col_row`
  /// are MODEL_OPVAL states.
  std::vector<std::size_t> decode_cond_val(Tape& tape, Var embedded, Var H_qt, Var H_col_row,
                                           std::size_t max_len);

  // Distribution-level views used for inspection and tests.
  std::vector<double> predict_select_col(const Matrix& H_qt_col, const Matrix& H_col);
  std::vector<double> predict_cond_number(const Matrix& H_qt_col);
  std::vector<std::size_t> predict_cond_cols(const Matrix& H_qt_col, const Matrix& H_col,
                                             const Matrix& H_qt_scol, std::size_t k);
  std::vector<double> predict_agg(const Matrix& H_qt_scol_row);
  std::vector<double> predict_op(const Matrix& H_qt_col_row, const Matrix& H_col_row);

 private:
  Var p(Tape& tape, const std::string& name) { return tape.param(params_.at(name)); }
  SubModelEncoding encode_sub(Tape& tape, const std::string& prefix, Var embedded,
                              const EncoderInput& input);
  Var cond_col_scores_for(Tape& tape, const SubModelEncoding& enc, std::size_t select_col);
  Var agg_scores_for(Tape& tape, const SubModelEncoding& enc, std::size_t select_col);
  Var op_scores_for(Tape& tape, const SubModelEncoding& enc, std::size_t col);
  Var pointer_step(Tape& tape, Var keys, Var H_col_row, Var h);

  ModelConfig config_;
  ParamStore params_;
};

/// Indices of the k largest entries, descending; ties go to the lower index.
std::vector<std::size_t> top_k(const std::vector<double>& values, std::size_t k);
std::size_t argmax(std::span<const double> values);

/// First contiguous occurrence of the value's tokens in the question.
std::optional<std::vector<std::size_t>> locate_value(const std::vector<std::string>& question_tokens,
                                                     const std::string& value);

}  // namespace typesql
