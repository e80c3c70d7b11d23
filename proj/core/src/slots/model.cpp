#include "typesql/slots/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/lstm.hpp"
#include "typesql/numkernel/ops.hpp"

namespace typesql {

namespace {

constexpr std::array<const char*, 3> kSubModels = {"col", "agg", "opval"};

std::vector<double> softmax_vector(const Matrix& scores) {
  const Matrix p = softmax_rows(scores);
  return p.data();
}

}  // namespace

void ModelConfig::validate() const {
  if (word_dim == 0) throw Error("config: word_dim must be positive");
  if (effective_type_dim() == 0) throw Error("config: type_dim must be positive");
  if (hidden < 2 || hidden % 2 != 0) throw Error("config: hidden must be a positive even width");
  if (dropout < 0.0 || dropout >= 1.0) throw Error("config: dropout must lie in [0, 1)");
  if (max_value_len == 0) throw Error("config: max_value_len must be positive");
}

void SlotPrediction::check(std::size_t column_count, std::size_t token_count) const {
  if (select_col >= column_count) throw Error("prediction: select column out of range");
  if (agg >= kAggCount) throw Error("prediction: aggregator out of range");
  if (cond_count > kMaxConditions) throw Error("prediction: more than 4 conditions");
  if (cond_cols.size() != cond_count || cond_ops.size() != cond_count ||
      cond_val_spans.size() != cond_count) {
    throw Error("prediction: condition lists are not parallel");
  }
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < cond_count; ++i) {
    if (cond_cols[i] >= column_count) throw Error("prediction: condition column out of range");
    if (!seen.insert(cond_cols[i]).second) throw Error("prediction: duplicate condition column");
    if (cond_ops[i] >= kOpCount) throw Error("prediction: operator out of range");
    for (auto t : cond_val_spans[i])
      if (t >= token_count) throw Error("prediction: value span index out of range");
  }
}

TypeSqlModel::TypeSqlModel(ModelConfig config, std::uint64_t seed)
    : config_(config), params_(seed) {
  config_.validate();
  const std::size_t d = config_.hidden;
  const std::size_t h = d / 2;
  const std::size_t in = config_.input_dim();
  const std::size_t w = config_.word_dim;

  params_.add_uniform("type_embedding", {kEmbeddedTypeCount, config_.effective_type_dim()},
                      config_.effective_type_dim());
  for (const char* m : kSubModels) {
    const std::string pre = m;
    register_lstm(params_, pre + ".qt.fw", in, h);
    register_lstm(params_, pre + ".qt.bw", in, h);
    register_lstm(params_, pre + ".col.fw", w, h);
    register_lstm(params_, pre + ".col.bw", w, h);
    params_.add_uniform(pre + ".W_ct", {d, d}, d);
  }
  params_.add_uniform("col.sel.W_c", {d, d}, d);
  params_.add_uniform("col.sel.W_qt", {d, d}, d);
  params_.add_uniform("col.sel.V", {d}, d);
  params_.add_uniform("col.num.W_qt", {d, d}, d);
  params_.add_uniform("col.num.V", {kMaxConditions + 1, d}, d);
  params_.add_uniform("col.cond.W_c", {d, d}, d);
  params_.add_uniform("col.cond.W_qt", {d, d}, d);
  params_.add_uniform("col.cond.W_scol", {d, d}, d);
  params_.add_uniform("col.cond.V", {d}, d);

  params_.add_uniform("agg.agg.W_qt", {d, d}, d);
  params_.add_uniform("agg.agg.V", {kAggCount, d}, d);

  params_.add_uniform("opval.op.W_c", {d, d}, d);
  params_.add_uniform("opval.op.W_qt", {d, d}, d);
  params_.add_uniform("opval.op.W_t", {kOpCount, d}, d);
  params_.add_uniform("opval.val.W_qt", {d, d}, d);
  params_.add_uniform("opval.val.W_c", {d, d}, d);
  params_.add_uniform("opval.val.W_h", {d, d}, d);
  params_.add_uniform("opval.val.V", {d}, d);
  params_.add_uniform("opval.val.end_key", {d}, d);
  params_.add_zeros("opval.val.end_bias", {1});
  register_lstm(params_, "opval.dec", in, d);
  params_.add_uniform("opval.dec_start", {in}, in);
}

SubModelEncoding TypeSqlModel::encode_sub(Tape& tape, const std::string& prefix, Var embedded,
                                          const EncoderInput& input) {
  const double rate = config_.dropout;
  Var H_qt = encode_question(embedded, bind_lstm(tape, params_, prefix + ".qt.fw"),
                             bind_lstm(tape, params_, prefix + ".qt.bw"));
  Var H_col = encode_columns(tape.constant(input.column_vectors),
                             bind_lstm(tape, params_, prefix + ".col.fw"),
                             bind_lstm(tape, params_, prefix + ".col.bw"));
  H_qt = dropout(H_qt, rate);
  H_col = dropout(H_col, rate);
  Attention att = column_attention(H_qt, H_col, p(tape, prefix + ".W_ct"));
  att.H_qt_col = dropout(att.H_qt_col, rate);
  return {H_qt, H_col, att};
}

ModelEncoding TypeSqlModel::encode(Tape& tape, const EncoderInput& input) {
  ModelEncoding enc;
  enc.embedded = embed_question(tape, input, p(tape, "type_embedding"));
  enc.col = encode_sub(tape, "col", enc.embedded, input);
  enc.agg = encode_sub(tape, "agg", enc.embedded, input);
  enc.opval = encode_sub(tape, "opval", enc.embedded, input);
  return enc;
}

Var TypeSqlModel::cond_col_scores_for(Tape& tape, const SubModelEncoding& enc,
                                      std::size_t select_col) {
  const std::size_t C = enc.H_col.rows();
  Var scol = repeat_rows(row(enc.attention.H_qt_col, select_col), C);
  return cond_col_scores(enc.attention.H_qt_col, enc.H_col, scol, p(tape, "col.cond.W_c"),
                         p(tape, "col.cond.W_qt"), p(tape, "col.cond.W_scol"),
                         p(tape, "col.cond.V"));
}

Var TypeSqlModel::agg_scores_for(Tape& tape, const SubModelEncoding& enc, std::size_t select_col) {
  return agg_scores(row(enc.attention.H_qt_col, select_col), p(tape, "agg.agg.W_qt"),
                    p(tape, "agg.agg.V"));
}

Var TypeSqlModel::op_scores_for(Tape& tape, const SubModelEncoding& enc, std::size_t col) {
  return op_scores(row(enc.attention.H_qt_col, col), row(enc.H_col, col), p(tape, "opval.op.W_c"),
                   p(tape, "opval.op.W_qt"), p(tape, "opval.op.W_t"));
}

Var TypeSqlModel::pointer_step(Tape& tape, Var keys, Var H_col_row, Var h) {
  return pointer_scores(keys, H_col_row, h, p(tape, "opval.val.W_c"), p(tape, "opval.val.W_h"),
                        p(tape, "opval.val.V"), p(tape, "opval.val.end_bias"));
}

SlotScores TypeSqlModel::score(Tape& tape, const EncoderInput& input, const SlotTargets& gold) {
  const std::size_t C = input.column_vectors.rows();
  const std::size_t T = input.question.size();
  if (gold.select_col >= C) throw Error("gold select column out of range");
  if (gold.cond_cols.size() > kMaxConditions) throw Error("gold query has more than 4 conditions");
  if (gold.cond_ops.size() != gold.cond_cols.size() ||
      gold.cond_val_spans.size() != gold.cond_cols.size()) {
    throw Error("gold condition lists are not parallel");
  }
  ModelEncoding enc = encode(tape, input);
  SlotScores out;
  const auto& colm = enc.col.attention;
  out.select_col = select_col_scores(colm.H_qt_col, enc.col.H_col, p(tape, "col.sel.W_c"),
                                     p(tape, "col.sel.W_qt"), p(tape, "col.sel.V"));
  out.cond_number = cond_number_scores(colm.H_qt_col, p(tape, "col.num.W_qt"), p(tape, "col.num.V"));
  out.cond_cols = cond_col_scores_for(tape, enc.col, gold.select_col);
  out.agg = agg_scores_for(tape, enc.agg, gold.select_col);

  Var keys;
  const LstmVars dec = bind_lstm(tape, params_, "opval.dec");
  for (std::size_t i = 0; i < gold.cond_cols.size(); ++i) {
    const std::size_t col = gold.cond_cols[i];
    if (col >= C) throw Error("gold condition column out of range");
    out.ops.push_back(op_scores_for(tape, enc.opval, col));
    out.pointer.emplace_back();
    out.pointer_targets.emplace_back();
    const auto& span = gold.cond_val_spans[i];
    if (!span) continue;
    if (!keys.valid()) {
      keys = pointer_keys(enc.opval.H_qt, p(tape, "opval.val.end_key"), p(tape, "opval.val.W_qt"));
    }
    Var H_col_row = row(enc.opval.H_col, col);
    Var x = p(tape, "opval.dec_start");
    LstmCell state{tape.constant(Matrix(1, config_.hidden)), tape.constant(Matrix(1, config_.hidden))};
    std::vector<std::size_t> targets = *span;
    targets.push_back(T);
    for (std::size_t step = 0; step < targets.size(); ++step) {
      state = lstm_cell(x, state.h, state.c, dec);
      out.pointer.back().push_back(pointer_step(tape, keys, H_col_row, state.h));
      if (targets[step] < T) x = row(enc.embedded, targets[step]);
    }
    out.pointer_targets.back() = std::move(targets);
  }
  return out;
}

std::vector<std::size_t> TypeSqlModel::decode_cond_val(Tape& tape, Var embedded, Var H_qt,
                                                       Var H_col_row, std::size_t max_len) {
  const std::size_t T = H_qt.rows();
  Var keys = pointer_keys(H_qt, p(tape, "opval.val.end_key"), p(tape, "opval.val.W_qt"));
  const LstmVars dec = bind_lstm(tape, params_, "opval.dec");
  Var x = p(tape, "opval.dec_start");
  LstmCell state{tape.constant(Matrix(1, config_.hidden)), tape.constant(Matrix(1, config_.hidden))};
  std::vector<std::size_t> out;
  while (out.size() < max_len) {
    state = lstm_cell(x, state.h, state.c, dec);
    Var scores = pointer_step(tape, keys, H_col_row, state.h);
    const std::size_t pick = argmax(scores.value().data());
    if (pick == T) break;
    out.push_back(pick);
    x = row(embedded, pick);
  }
  return out;
}

SlotPrediction TypeSqlModel::predict(const EncoderInput& input) {
  Tape tape(false);
  tape.set_grad_enabled(false);
  const std::size_t C = input.column_vectors.rows();
  ModelEncoding enc = encode(tape, input);
  SlotPrediction pred;

  const auto& colm = enc.col.attention;
  Var sel = select_col_scores(colm.H_qt_col, enc.col.H_col, p(tape, "col.sel.W_c"),
                              p(tape, "col.sel.W_qt"), p(tape, "col.sel.V"));
  pred.select_col = argmax(sel.value().data());
  Var num = cond_number_scores(colm.H_qt_col, p(tape, "col.num.W_qt"), p(tape, "col.num.V"));
  pred.cond_count = std::min(argmax(num.value().data()), C);
  pred.agg = argmax(agg_scores_for(tape, enc.agg, pred.select_col).value().data());

  if (pred.cond_count > 0) {
    Var cc = cond_col_scores_for(tape, enc.col, pred.select_col);
    pred.cond_cols = top_k(cc.value().data(), pred.cond_count);
  }
  for (std::size_t col : pred.cond_cols) {
    pred.cond_ops.push_back(argmax(op_scores_for(tape, enc.opval, col).value().data()));
    pred.cond_val_spans.push_back(decode_cond_val(tape, enc.embedded, enc.opval.H_qt,
                                                  row(enc.opval.H_col, col), config_.max_value_len));
  }
  return pred;
}

std::vector<double> TypeSqlModel::predict_select_col(const Matrix& H_qt_col, const Matrix& H_col) {
  Tape tape;
  tape.set_grad_enabled(false);
  return softmax_vector(select_col_scores(tape.constant(H_qt_col), tape.constant(H_col),
                                          p(tape, "col.sel.W_c"), p(tape, "col.sel.W_qt"),
                                          p(tape, "col.sel.V"))
                            .value());
}

std::vector<double> TypeSqlModel::predict_cond_number(const Matrix& H_qt_col) {
  Tape tape;
  tape.set_grad_enabled(false);
  return softmax_vector(
      cond_number_scores(tape.constant(H_qt_col), p(tape, "col.num.W_qt"), p(tape, "col.num.V"))
          .value());
}

std::vector<std::size_t> TypeSqlModel::predict_cond_cols(const Matrix& H_qt_col,
                                                         const Matrix& H_col,
                                                         const Matrix& H_qt_scol, std::size_t k) {
  if (k > H_col.rows()) {
    throw Error("predict_cond_cols: k = " + std::to_string(k) + " exceeds column count " +
                std::to_string(H_col.rows()));
  }
  if (k == 0) return {};
  Tape tape;
  tape.set_grad_enabled(false);
  Var c = cond_col_scores(tape.constant(H_qt_col), tape.constant(H_col), tape.constant(H_qt_scol),
                          p(tape, "col.cond.W_c"), p(tape, "col.cond.W_qt"),
                          p(tape, "col.cond.W_scol"), p(tape, "col.cond.V"));
  return top_k(softmax_vector(c.value()), k);
}

std::vector<double> TypeSqlModel::predict_agg(const Matrix& H_qt_scol_row) {
  Tape tape;
  tape.set_grad_enabled(false);
  return softmax_vector(
      agg_scores(tape.constant(H_qt_scol_row), p(tape, "agg.agg.W_qt"), p(tape, "agg.agg.V"))
          .value());
}

std::vector<double> TypeSqlModel::predict_op(const Matrix& H_qt_col_row, const Matrix& H_col_row) {
  Tape tape;
  tape.set_grad_enabled(false);
  return softmax_vector(op_scores(tape.constant(H_qt_col_row), tape.constant(H_col_row),
                                  p(tape, "opval.op.W_c"), p(tape, "opval.op.W_qt"),
                                  p(tape, "opval.op.W_t"))
                            .value());
}

std::vector<std::size_t> top_k(const std::vector<double>& values, std::size_t k) {
  if (k > values.size()) throw Error("top_k: k exceeds the number of candidates");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  idx.resize(k);
  return idx;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw Error("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::optional<std::vector<std::size_t>> locate_value(const std::vector<std::string>& question_tokens,
                                                     const std::string& value) {
  const std::string key = token_key(value);
  if (key.empty()) return std::nullopt;
  const std::vector<std::string> needle = tokenize(key).tokens;
  if (needle.size() > question_tokens.size()) return std::nullopt;
  for (std::size_t s = 0; s + needle.size() <= question_tokens.size(); ++s) {
    if (std::equal(needle.begin(), needle.end(), question_tokens.begin() + static_cast<long>(s))) {
      std::vector<std::size_t> span(needle.size());
      std::iota(span.begin(), span.end(), s);
      return span;
    }
  }
  return std::nullopt;
}

}  // namespace typesql
