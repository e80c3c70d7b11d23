#include "typesql/encoder/encoder.hpp"

#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"

namespace typesql {

namespace {

std::size_t type_row(const TypeTag& tag) {
  const auto k = static_cast<std::size_t>(tag.kind);
  if (k >= kEmbeddedTypeCount) throw Error("type tag has no embedding row");
  return k;
}

void check_column_value(const TypeTag& tag, const EncoderInput& input, std::size_t type_dim) {
  if (tag.column >= input.column_vectors.rows()) {
    throw Error("column-value tag refers to column " + std::to_string(tag.column) +
                " outside the schema");
  }
  if (type_dim != input.column_vectors.cols()) {
    throw Error("column-value tags need type dimension equal to word dimension");
  }
}

}  // namespace

Matrix question_word_vectors(const TaggedQuestion& tq, const EmbeddingStore& emb) {
  Matrix out(tq.size(), emb.dim());
  for (std::size_t t = 0; t < tq.size(); ++t) {
    auto v = emb.lookup(tq.tokens[t]);
    std::copy(v.begin(), v.end(), out.row(t).begin());
  }
  return out;
}

Matrix column_name_vectors(const TableSchema& schema, const EmbeddingStore& emb) {
  if (schema.columns.empty()) throw Error("schema has no columns");
  Matrix out(schema.columns.size(), emb.dim());
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const Tokens words = [&] {
      try {
        return tokenize(schema.columns[c].name);
      } catch (const Error&) {
        throw Error("column " + std::to_string(c) + " has an empty name");
      }
    }();
    auto dst = out.row(c);
    for (const auto& w : words.tokens) {
      auto v = emb.lookup(w);
      for (std::size_t k = 0; k < v.size(); ++k) dst[k] += v[k];
    }
    const double n = static_cast<double>(words.tokens.size());
    for (auto& x : dst) x /= n;
  }
  return out;
}

EncoderInput prepare_input(TaggedQuestion tq, const TableSchema& schema, const EmbeddingStore& emb) {
  tq.check();
  EncoderInput in;
  in.word_vectors = question_word_vectors(tq, emb);
  in.column_vectors = column_name_vectors(schema, emb);
  in.question = std::move(tq);
  return in;
}

Var embed_question(Tape& tape, const EncoderInput& input, Var type_table) {
  const TaggedQuestion& tq = input.question;
  std::vector<Var> type_rows;
  type_rows.reserve(tq.size());
  for (const TypeTag& tag : tq.tags) {
    if (tag.kind == TypeKind::ColumnValue) {
      check_column_value(tag, input, type_table.cols());
      type_rows.push_back(tape.constant(Matrix::row_vector(input.column_vectors.row(tag.column))));
    } else {
      type_rows.push_back(row(type_table, type_row(tag)));
    }
  }
  return concat_cols({tape.constant(input.word_vectors), concat_rows(type_rows)});
}

std::vector<std::vector<double>> embed_question(const EncoderInput& input, const Matrix& type_table) {
  std::vector<std::vector<double>> out;
  const TaggedQuestion& tq = input.question;
  for (std::size_t t = 0; t < tq.size(); ++t) {
    std::vector<double> v(input.word_vectors.row(t).begin(), input.word_vectors.row(t).end());
    const TypeTag& tag = tq.tags[t];
    std::span<const double> type;
    if (tag.kind == TypeKind::ColumnValue) {
      check_column_value(tag, input, type_table.cols());
      type = input.column_vectors.row(tag.column);
    } else {
      type = type_table.row(type_row(tag));
    }
    v.insert(v.end(), type.begin(), type.end());
    out.push_back(std::move(v));
  }
  return out;
}

Matrix encode_question(const std::vector<std::vector<double>>& embedded, const LstmWeights& fw,
                       const LstmWeights& bw) {
  return bilstm_encode(embedded, fw, bw);
}

Matrix encode_columns(const Matrix& column_vectors, const LstmWeights& fw, const LstmWeights& bw) {
  std::vector<std::vector<double>> seq;
  for (std::size_t r = 0; r < column_vectors.rows(); ++r)
    seq.emplace_back(column_vectors.row(r).begin(), column_vectors.row(r).end());
  return bilstm_encode(seq, fw, bw);
}

}  // namespace typesql
