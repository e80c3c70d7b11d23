#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "harness_fixture.hpp"
#include "typesql/harness/config.hpp"
#include "typesql/harness/loss.hpp"
#include "typesql/harness/synthetic.hpp"
#include "typesql/execeval/executor.hpp"
#include "typesql/typerec/tokenize.hpp"
#include "typesql/numkernel/checkpoint.hpp"
#include "typesql/numkernel/error.hpp"
#include "typesql/numkernel/ops.hpp"

using namespace typesql;
using namespace typesql::test;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("typesql_harness_" + name); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TrainConfig tiny_train_config(std::size_t epochs) {
  TrainConfig c;
  c.model.word_dim = 6;
  c.model.type_dim = 4;
  c.model.hidden = 8;
  c.batch_size = 2;
  c.epochs = epochs;
  c.seed = 5;
  return c;
}

}  // namespace

// ---- dataset -------------------------------------------------------------------

TEST(Dataset, ReadsWellFormedLines) {
  std::istringstream in(
      R"({"question":"q one","table_id":"t","sql":{"sel":0,"agg":0,"conds":[]}})"
      "\n\n"
      R"({"question":"q two","table_id":"t","sql":{"sel":1,"agg":3,"conds":[[0,1,"5"],[1,0,7]]}})"
      "\n");
  const auto ex = read_examples(in, "x.jsonl");
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(ex[1].gold.agg, Agg::Count);
  EXPECT_EQ(ex[1].gold.conds[0].op, Op::Gt);
  EXPECT_EQ(ex[1].gold.conds[1].val, "7");
}

TEST(Dataset, RejectsBadCodesWithLineNumber) {
  std::istringstream agg(
      R"({"question":"a","table_id":"t","sql":{"sel":0,"agg":0,"conds":[]}})"
      "\n"
      R"({"question":"b","table_id":"t","sql":{"sel":0,"agg":7,"conds":[]}})"
      "\n");
  EXPECT_NE(error_of([&] { read_examples(agg, "x.jsonl"); }).find("x.jsonl:2"), std::string::npos);
  std::istringstream op(R"({"question":"b","table_id":"t","sql":{"sel":0,"agg":0,"conds":[[0,3,"v"]]}})");
  EXPECT_NE(error_of([&] { read_examples(op, "y.jsonl"); }).find("y.jsonl:1"), std::string::npos);
  std::istringstream junk("{not json\n");
  EXPECT_NE(error_of([&] { read_examples(junk, "z.jsonl"); }).find("z.jsonl:1"), std::string::npos);
  std::istringstream table(R"({"id":"t","header":["a"],"types":["real"],"rows":[["abc"]]})");
  EXPECT_NE(error_of([&] { read_tables(table, "t.jsonl"); }).find("t.jsonl:1"), std::string::npos);
}

TEST(Dataset, RoundTrip) {
  const SyntheticCorpus corpus = generate_synthetic({.seed = 3, .train_per_table = 3, .dev_per_table = 1});
  std::stringstream ex, tb;
  write_examples(ex, corpus.train);
  write_tables(tb, corpus.tables);
  EXPECT_EQ(read_examples(ex), corpus.train);
  const TableMap back = read_tables(tb);
  ASSERT_EQ(back.size(), corpus.tables.size());
  for (const auto& [id, t] : corpus.tables) {
    EXPECT_EQ(back.at(id).rows, t.rows);
    EXPECT_EQ(back.at(id).schema.columns.size(), t.schema.columns.size());
  }
}

TEST(Dataset, DanglingTableIdNamed) {
  const fs::path ex = temp_path("dangling.jsonl"), tb = temp_path("dangling_tables.jsonl");
  std::ofstream(ex) << R"({"question":"a","table_id":"ghost","sql":{"sel":0,"agg":0,"conds":[]}})" << "\n";
  std::ofstream(tb) << R"({"id":"t","header":["a"],"types":["text"],"rows":[["x"]]})" << "\n";
  EXPECT_NE(error_of([&] { load_dataset(ex, tb); }).find("ghost"), std::string::npos);
}

// ---- config -------------------------------------------------------------------

TEST(Config, DefaultsAndRelativePaths) {
  const TrainConfig c = parse_config(R"({"embeddings":["e.txt"],"train_examples":"data/t.jsonl","mode":"content"})",
                                     "/base");
  EXPECT_EQ(c.model.hidden, 120u);
  EXPECT_EQ(c.model.dropout, 0.3);
  EXPECT_EQ(c.batch_size, 64u);
  EXPECT_EQ(c.learning_rate, 1e-3);
  EXPECT_EQ(c.model.mode, TypingMode::Content);
  EXPECT_EQ(fs::path(c.embeddings[0]), fs::path("/base/e.txt"));
  EXPECT_EQ(fs::path(c.train_examples), fs::path("/base/data/t.jsonl"));
}

TEST(Config, Validation) {
  EXPECT_THROW(parse_config(R"({"batch_size":0})"), Error);
  EXPECT_THROW(parse_config(R"({"dropout":1.0})"), Error);
  EXPECT_THROW(parse_config(R"({"mode":"fuzzy"})"), Error);
  EXPECT_THROW(parse_config("[1,2]"), Error);
}

TEST(Config, RoundTrip) {
  TrainConfig c = tiny_train_config(7);
  c.embeddings = {"/a/e.txt"};
  c.checkpoint = "/a/m.tsq";
  const TrainConfig back = parse_config(config_json(c));
  EXPECT_EQ(back.epochs, 7u);
  EXPECT_EQ(back.model.hidden, 8u);
  EXPECT_EQ(back.embeddings, c.embeddings);
  EXPECT_EQ(back.checkpoint, c.checkpoint);
}

// ---- loss ---------------------------------------------------------------------

TEST(Loss, ZeroParametersAnalyticValue) {
  const Resources res = tiny_resources(6, 1);
  Dataset d = tiny_dataset();
  d.examples = {d.examples[1]};  // COUNT(team), no conditions, C = 4
  ModelConfig mc;
  mc.word_dim = 6;
  mc.type_dim = 4;
  mc.hidden = 8;
  mc.dropout = 0.0;
  TypeSqlModel model(mc, 1);
  model.params().fill(0.0);
  const auto prepared = prepare_examples(d, mc.mode, res);
  const double want = std::log(4.0) + std::log(5.0) + std::log(6.0) + 4.0 * std::log(2.0);
  EXPECT_NEAR(example_loss_value(model, prepared[0]), want, 1e-12);
}

TEST(Loss, SaturatedScoresGiveZero) {
  Tape tape;
  SlotTargets gold;
  gold.select_col = 1;
  gold.agg = 2;
  gold.cond_cols = {0};
  gold.cond_ops = {2};
  gold.cond_val_spans = {std::vector<std::size_t>{1}};
  SlotScores s;
  s.select_col = tape.constant(Matrix{{-100, 100, -100}});
  s.cond_number = tape.constant(Matrix{{-100, 100, -100, -100, -100}});
  s.cond_cols = tape.constant(Matrix{{100, -100, -100}});
  s.agg = tape.constant(Matrix{{-100, -100, 100, -100, -100, -100}});
  s.ops = {tape.constant(Matrix{{-100, -100, 100}})};
  s.pointer = {{tape.constant(Matrix{{-100, 100, -100}}), tape.constant(Matrix{{-100, -100, 100}})}};
  s.pointer_targets = {{1, 2}};
  const double loss = total_loss(s, gold).scalar();
  EXPECT_GE(loss, 0.0);
  EXPECT_LT(loss, 1e-40);
}

TEST(Loss, TargetsLocateSpans) {
  SqlQuery q;
  q.conds = {{0, Op::Eq, "Ann Lee"}, {1, Op::Eq, "missing"}};
  const SlotTargets t = make_targets(q, {"goals", "of", "ann", "lee", "?"});
  EXPECT_EQ(t.cond_val_spans[0], (std::vector<std::size_t>{2, 3}));
  EXPECT_FALSE(t.cond_val_spans[1].has_value());
}

TEST(Loss, FiniteAndNonNegativeOnCorpus) {
  const SyntheticCorpus corpus = generate_synthetic({.seed = 4, .train_per_table = 4, .dev_per_table = 1});
  const Resources res{corpus.embeddings, corpus.gazetteer()};
  ModelConfig mc;
  mc.hidden = 8;
  mc.type_dim = 4;
  for (auto mode : {TypingMode::Insensitive, TypingMode::Content}) {
    mc.mode = mode;
    TypeSqlModel model(mc, 2);
    const Dataset data{corpus.train, corpus.tables};
    const auto prepared = prepare_examples(data, mode, res);
    for (const auto& ex : prepared) {
      const double l = example_loss_value(model, ex);
      EXPECT_TRUE(std::isfinite(l));
      EXPECT_GE(l, 0.0);
    }
  }
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  const GradCheckReport rep = gradient_check(TypingMode::Insensitive, 8, 1e-5, 1e-3, 3);
  EXPECT_LE(rep.max_rel_error, 1e-6) << rep.worst;
  const GradCheckReport content = gradient_check(TypingMode::Content, 8, 1e-5, 1e-3, 4);
  EXPECT_LE(content.max_rel_error, 1e-6) << content.worst;
}

// ---- training -----------------------------------------------------------------

TEST(Train, TwoEpochsFiniteLog) {
  const Resources res = tiny_resources(6, 2);
  const Dataset d = tiny_dataset();
  TrainConfig cfg = tiny_train_config(2);
  TypeSqlModel model(cfg.model, cfg.seed);
  std::vector<PreparedExample> train = prepare_examples(d, cfg.model.mode, res);
  while (train.size() < 10) train.push_back(train[train.size() % 3]);
  const TrainResult r = Trainer(cfg, model).train(train);
  ASSERT_EQ(r.log.size(), 2u);
  for (const auto& e : r.log) EXPECT_TRUE(std::isfinite(e.train_loss));
}

TEST(Train, SameSeedSameTrajectory) {
  const Resources res = tiny_resources(6, 2);
  const Dataset d = tiny_dataset();
  auto run = [&] {
    TrainConfig cfg = tiny_train_config(4);
    TypeSqlModel model(cfg.model, cfg.seed);
    const auto train = prepare_examples(d, cfg.model.mode, res);
    std::vector<double> losses;
    for (const auto& e : Trainer(cfg, model).train(train).log) losses.push_back(e.train_loss);
    return std::make_pair(losses, model.params().at("col.sel.V").data);
  };
  EXPECT_EQ(run(), run());
}

TEST(Train, LossDecreasesOnTinySet) {
  const Resources res = tiny_resources(6, 2);
  TrainConfig cfg = tiny_train_config(30);
  cfg.model.dropout = 0.0;
  cfg.learning_rate = 1e-2;
  TypeSqlModel model(cfg.model, cfg.seed);
  const Dataset data = tiny_dataset();
  const auto train = prepare_examples(data, cfg.model.mode, res);
  const TrainResult r = Trainer(cfg, model).train(train);
  EXPECT_LT(r.log.back().train_loss, 0.5 * r.log.front().train_loss);
}

// ---- checkpoint and prediction ----------------------------------------------------

TEST(Checkpoint, RoundTripReproducesForwardOutputs) {
  const Resources res = tiny_resources(6, 3);
  ModelConfig mc = tiny_train_config(1).model;
  TypeSqlModel a(mc, 11);
  a.params().round_to_float();
  const fs::path path = temp_path("model.tsq");
  save_checkpoint(path, a.params());
  TypeSqlModel b(mc, 12);
  load_checkpoint(path, b.params());
  const Dataset data = tiny_dataset();
  const auto prepared = prepare_examples(data, mc.mode, res);
  for (const auto& ex : prepared) {
    EXPECT_EQ(example_loss_value(a, ex), example_loss_value(b, ex));
    EXPECT_EQ(assemble(a.predict(ex.input), ex.input.question.tokens),
              assemble(b.predict(ex.input), ex.input.question.tokens));
  }
  ModelConfig wider = mc;
  wider.hidden = 10;
  TypeSqlModel c(wider, 1);
  EXPECT_THROW(load_checkpoint(path, c.params()), Error);
}

TEST(Predict, MissingCheckpoint) {
  TrainConfig cfg = tiny_train_config(1);
  const Resources res = tiny_resources(6, 3);
  EXPECT_NE(error_of([&] { load_model(cfg, res, temp_path("absent.tsq")); }).find("checkpoint not found"),
            std::string::npos);
}

TEST(Predict, SingleColumnAlwaysSelectsIt) {
  const Resources res = tiny_resources(6, 3);
  ModelConfig mc = tiny_train_config(1).model;
  TypeSqlModel model(mc, 13);
  model.params().fill(0.0);
  Table t;
  t.schema = {"one", {{"goals", ColumnKind::Real}}};
  t.rows = {{1.0}};
  for (const char* q : {"how many goals ?", "goals of ann lee", "what ?"}) {
    const SqlQuery out = predict_query(model, q, t, res);
    EXPECT_EQ(out.sel, 0u);
    EXPECT_NO_THROW(out.validate(1));
  }
}

TEST(Predict, OutputsSatisfyInvariants) {
  const SyntheticCorpus corpus = generate_synthetic({.seed = 5, .train_per_table = 3, .dev_per_table = 1});
  const Resources res{corpus.embeddings, corpus.gazetteer()};
  ModelConfig mc;
  mc.hidden = 8;
  mc.type_dim = 4;
  TypeSqlModel model(mc, 14);
  for (const auto& e : corpus.train) {
    const Table& t = corpus.tables.at(e.table_id);
    const EncoderInput in = prepare_question(e.question, t, mc.mode, res);
    const SlotPrediction p = model.predict(in);
    EXPECT_NO_THROW(p.check(t.column_count(), in.question.size()));
    EXPECT_NO_THROW(assemble(p, in.question.tokens).validate(t.column_count()));
  }
}

// ---- synthetic corpus -----------------------------------------------------------

TEST(Synthetic, ShapeAndValidity) {
  const SyntheticCorpus c = generate_synthetic();
  EXPECT_GE(c.tables.size(), 10u);
  EXPECT_GE(c.train.size(), 200u);
  EXPECT_EQ(c.embeddings.dim(), 50u);
  std::set<std::string> train_q;
  std::set<Agg> aggs;
  std::set<Op> ops;
  for (const auto& e : c.train) {
    train_q.insert(e.question);
    aggs.insert(e.gold.agg);
    for (const auto& cond : e.gold.conds) ops.insert(cond.op);
    EXPECT_NO_THROW(e.gold.validate(c.tables.at(e.table_id).column_count()));
    for (const auto& cond : e.gold.conds)
      EXPECT_TRUE(locate_value(tokenize(e.question).tokens, cond.val).has_value()) << e.question;
    EXPECT_NO_THROW(execute(e.gold, c.tables.at(e.table_id))) << e.question;
  }
  EXPECT_EQ(aggs.size(), 6u);
  EXPECT_EQ(ops.size(), 3u);
  for (const auto& e : c.dev) EXPECT_FALSE(train_q.contains(e.question)) << e.question;
}

TEST(Synthetic, Deterministic) {
  const SyntheticCorpus a = generate_synthetic({.seed = 9});
  const SyntheticCorpus b = generate_synthetic({.seed = 9});
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.dev, b.dev);
  EXPECT_EQ(a.embeddings.vectors(), b.embeddings.vectors());
}

TEST(Synthetic, WrittenFilesLoad) {
  const fs::path dir = temp_path("synth");
  const SyntheticCorpus c = generate_synthetic({.seed = 2, .train_per_table = 2, .dev_per_table = 1});
  write_synthetic(dir, c);
  const Dataset d = load_dataset(dir / "train.jsonl", dir / "tables.jsonl");
  EXPECT_EQ(d.examples, c.train);
  const EmbeddingStore e = load_embeddings({dir / "embeddings.txt"});
  EXPECT_EQ(e.vectors(), c.embeddings.vectors());
  EXPECT_EQ(Gazetteer::load_file(dir / "gazetteer.tsv").size(), c.gazetteer().size());
}
