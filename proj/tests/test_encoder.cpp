#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "typesql/encoder/encoder.hpp"
#include "typesql/numkernel/error.hpp"
#include "typesql/typerec/recognizer.hpp"

using namespace typesql;
using namespace typesql::test;
namespace fs = std::filesystem;

namespace {

EmbeddingStore random_store(std::size_t dim, const std::vector<std::string>& words, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EmbeddingStore s(dim);
  for (const auto& w : words) s.add(w, random_vector(dim, rng));
  return s;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("typesql_test_" + name);
  std::ofstream(p) << text;
  return p;
}

std::string embedding_lines(const std::vector<std::string>& words, std::size_t dim, double base) {
  std::ostringstream out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out << words[i];
    for (std::size_t k = 0; k < dim; ++k) out << ' ' << base + i + 0.01 * k;
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST(Embeddings, UnknownWordIsZero) {
  const auto s = random_store(4, {"a"}, 1);
  for (double x : s.lookup("zzz")) EXPECT_EQ(x, 0.0);
}

TEST(Embeddings, LoadLowercasesAndFirstWins) {
  std::istringstream in("The 1 2\nthe 3 4\nx 5 6\n");
  const auto s = EmbeddingStore::load(in);
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.lookup("the")[0], 1.0);
}

TEST(Embeddings, DimensionMismatchNamesLine) {
  std::istringstream in("a 1 2\nb 1 2 3\n");
  try {
    EmbeddingStore::load(in, "e.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("e.txt:2"), std::string::npos) << e.what();
  }
}

TEST(Embeddings, SingleFile) {
  const auto p = write_temp("one.txt", embedding_lines({"a", "b"}, 50, 0.0));
  EXPECT_EQ(load_embeddings({p}).dim(), 50u);
}

TEST(Embeddings, TwoFilesConcatenateAndPad) {
  const auto a = write_temp("a.txt", embedding_lines({"shared", "only_a"}, 50, 1.0));
  const auto b = write_temp("b.txt", embedding_lines({"shared", "only_b"}, 25, 5.0));
  const auto s = load_embeddings({a, b});
  EXPECT_EQ(s.dim(), 75u);
  const auto v = s.lookup("only_a");
  EXPECT_EQ(v[0], 2.0);
  for (std::size_t k = 50; k < 75; ++k) EXPECT_EQ(v[k], 0.0);
  const auto w = s.lookup("only_b");
  for (std::size_t k = 0; k < 50; ++k) EXPECT_EQ(w[k], 0.0);
  EXPECT_EQ(w[50], 6.0);
  EXPECT_EQ(s.lookup("shared")[50], 5.0);
  EXPECT_THROW(load_embeddings({a, b, a}), Error);
}

TEST(EmbedQuestion, WordThenTypeVector) {
  const auto emb = random_store(3, {"what", "issue"}, 2);
  std::mt19937_64 rng(3);
  const Matrix types = random_matrix(kEmbeddedTypeCount, 2, rng);
  TaggedQuestion tq = untagged("what issue zzz");
  tq.tags[1] = TypeTag::of(TypeKind::Column);
  const EncoderInput in = prepare_input(tq, {"t", {{"issue", ColumnKind::Text}}}, emb);
  const auto rows = embed_question(in, types);
  ASSERT_EQ(rows.size(), 3u);
  Vec want0(emb.lookup("what").begin(), emb.lookup("what").end());
  want0.push_back(types(0, 0));
  want0.push_back(types(0, 1));
  EXPECT_EQ(rows[0], want0);
  const auto col = static_cast<std::size_t>(TypeKind::Column);
  EXPECT_EQ(rows[1][3], types(col, 0));
  EXPECT_EQ(rows[2], (Vec{0.0, 0.0, 0.0, types(0, 0), types(0, 1)}));  // OOV prefix is zero

  Tape tape;
  const Var e = embed_question(tape, in, tape.constant(types));
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(e.value()(t, k), rows[t][k]);
}

TEST(EmbedQuestion, ColumnValueUsesColumnNameVector) {
  const auto emb = random_store(4, {"artist", "mort", "drucker", "spoofed", "title"}, 4);
  const Table t = figure1_table();
  const auto tq = recognize(kFigure1Question, t.schema, &t, TypingMode::Content, nullptr);
  const EncoderInput in = prepare_input(tq, t.schema, emb);
  const Matrix types(kEmbeddedTypeCount, 4, 0.25);
  const auto rows = embed_question(in, types);
  const auto artist = emb.lookup("artist");
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(rows[4][4 + k], artist[k]);
  EXPECT_THROW(embed_question(in, Matrix(kEmbeddedTypeCount, 3)), Error);
}

TEST(EncodeColumns, AveragesNameWords) {
  const auto emb = random_store(5, {"spoofed", "title"}, 5);
  const Matrix cv = column_name_vectors({"t", {{"Spoofed Title", ColumnKind::Text}, {"zzz", ColumnKind::Text}}}, emb);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_DOUBLE_EQ(cv(0, k), (emb.lookup("spoofed")[k] + emb.lookup("title")[k]) / 2.0);
    EXPECT_EQ(cv(1, k), 0.0);
  }
}

TEST(EncodeColumns, ErrorsOnEmptySchemaOrName) {
  const auto emb = random_store(2, {"a"}, 6);
  EXPECT_THROW(column_name_vectors({"t", {}}, emb), Error);
  EXPECT_THROW(column_name_vectors({"t", {{"  ", ColumnKind::Text}}}, emb), Error);
}

TEST(EncodeColumns, SingleColumnShape) {
  std::mt19937_64 rng(7);
  LstmWeights fw{random_matrix(12, 6, rng), random_vector(12, rng)};
  LstmWeights bw{random_matrix(12, 6, rng), random_vector(12, rng)};
  EXPECT_EQ(encode_columns(random_matrix(1, 3, rng), fw, bw).rows(), 1u);
  EXPECT_EQ(encode_columns(random_matrix(1, 3, rng), fw, bw).cols(), 6u);
}

TEST(EncodeColumns, OrderSensitive) {
  std::mt19937_64 rng(8);
  LstmWeights fw{random_matrix(12, 6, rng), random_vector(12, rng)};
  LstmWeights bw{random_matrix(12, 6, rng), random_vector(12, rng)};
  const Matrix cols = random_matrix(3, 3, rng);
  Matrix swapped = cols;
  for (std::size_t k = 0; k < 3; ++k) std::swap(swapped(0, k), swapped(2, k));
  const Matrix a = encode_columns(cols, fw, bw);
  const Matrix b = encode_columns(swapped, fw, bw);
  // If the encoder ignored order, b would be a row permutation of a.
  Matrix permuted = a;
  for (std::size_t k = 0; k < 6; ++k) std::swap(permuted(0, k), permuted(2, k));
  EXPECT_GT(max_abs_diff(permuted, b), 1e-6);
}

TEST(EncodeQuestion, Figure1RowsAndZeroWeights) {
  const auto emb = random_store(4, {"what", "artist"}, 9);
  const Table t = figure1_table();
  const auto tq = recognize(kFigure1Question, t.schema, &t, TypingMode::Insensitive, nullptr);
  const EncoderInput in = prepare_input(tq, t.schema, emb);
  const auto rows = embed_question(in, Matrix(kEmbeddedTypeCount, 2, 0.5));
  const auto zero = LstmWeights::zeros(6, 5);
  const Matrix H = encode_question(rows, zero, zero);
  EXPECT_EQ(H.rows(), 13u);
  EXPECT_EQ(H, Matrix(13, 10));
  EXPECT_EQ(encode_columns(in.column_vectors, LstmWeights::zeros(4, 5), LstmWeights::zeros(4, 5)),
            Matrix(5, 10));
}

TEST(EncodeQuestion, Deterministic) {
  std::mt19937_64 rng(10);
  LstmWeights fw{random_matrix(8, 5, rng), random_vector(8, rng)};
  std::vector<Vec> seq = {random_vector(3, rng), random_vector(3, rng)};
  EXPECT_EQ(encode_question(seq, fw, fw), encode_question(seq, fw, fw));
}
