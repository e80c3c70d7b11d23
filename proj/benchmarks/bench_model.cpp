#include <benchmark/benchmark.h>

#include "typesql/harness/synthetic.hpp"
#include "typesql/harness/trainer.hpp"
#include "typesql/numkernel/adam.hpp"

namespace {

using namespace typesql;

struct Fixture {
  SyntheticCorpus corpus = generate_synthetic({.seed = 3, .train_per_table = 2, .dev_per_table = 1});
  Resources res{corpus.embeddings, corpus.gazetteer()};
  Dataset data{corpus.train, corpus.tables};
  ModelConfig config;
  std::vector<PreparedExample> prepared;

  explicit Fixture(std::size_t hidden) {
    config.word_dim = res.embeddings.dim();
    config.hidden = hidden;
    prepared = prepare_examples(data, config.mode, res);
  }
};

void BM_PredictQuery(benchmark::State& state) {
  Fixture f(state.range(0));
  TypeSqlModel model(f.config, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const Example& e = f.corpus.train[i++ % f.corpus.train.size()];
    benchmark::DoNotOptimize(predict_query(model, e.question, f.corpus.tables.at(e.table_id), f.res));
  }
}
BENCHMARK(BM_PredictQuery)->Arg(48)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_TrainStep(benchmark::State& state) {
  Fixture f(state.range(0));
  TypeSqlModel model(f.config, 1);
  AdamState adam;
  std::size_t i = 0;
  for (auto _ : state) {
    model.params().zero_grad();
    Tape tape(true, i);
    backward(model.params(), example_loss(tape, model, f.prepared[i++ % f.prepared.size()]));
    adam_step(model.params(), adam);
  }
}
BENCHMARK(BM_TrainStep)->Arg(48)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace
