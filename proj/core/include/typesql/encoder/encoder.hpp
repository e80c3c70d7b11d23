#pragma once

#include <vector>

#include "typesql/encoder/embeddings.hpp"
#include "typesql/execeval/table.hpp"
#include "typesql/numkernel/lstm.hpp"
#include "typesql/numkernel/matrix.hpp"
#include "typesql/numkernel/tape.hpp"
#include "typesql/typerec/type_tag.hpp"

namespace typesql {

/// Everything the encoders need about one (question, schema) pair; the
/// frozen word vectors are looked up once.
struct EncoderInput {
  TaggedQuestion question;
  Matrix word_vectors;    // T × d_w
  Matrix column_vectors;  // C × d_w, mean of each column name's word vectors
};

Matrix question_word_vectors(const TaggedQuestion& tq, const EmbeddingStore& emb);
/// Throws on an empty schema or a column whose name has no tokens.
Matrix column_name_vectors(const TableSchema& schema, const EmbeddingStore& emb);
EncoderInput prepare_input(TaggedQuestion tq, const TableSchema& schema, const EmbeddingStore& emb);

/// Row t = [word vector | type vector]. A COLUMN_VALUE(j) tag uses row j of
/// column_vectors as its type vector, so it needs d_t == d_w.
Var embed_question(Tape& tape, const EncoderInput& input, Var type_table);
std::vector<std::vector<double>> embed_question(const EncoderInput& input, const Matrix& type_table);

inline Var encode_question(Var embedded, const LstmVars& fw, const LstmVars& bw) {
  return bilstm(embedded, fw, bw);
}
/// One bi-LSTM run across the column-name vectors in schema order.
inline Var encode_columns(Var column_vectors, const LstmVars& fw, const LstmVars& bw) {
  return bilstm(column_vectors, fw, bw);
}

Matrix encode_question(const std::vector<std::vector<double>>& embedded, const LstmWeights& fw,
                       const LstmWeights& bw);
Matrix encode_columns(const Matrix& column_vectors, const LstmWeights& fw, const LstmWeights& bw);

}  // namespace typesql
