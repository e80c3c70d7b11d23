#include <benchmark/benchmark.h>

#include <random>

#include "typesql/execeval/executor.hpp"

namespace {

using namespace typesql;

Table numbers_table(std::size_t rows) {
  Table t;
  t.schema.id = "bench";
  t.schema.columns = {{"name", ColumnKind::Text}, {"team", ColumnKind::Text}, {"points", ColumnKind::Real}};
  std::mt19937_64 rng(4);
  for (std::size_t r = 0; r < rows; ++r)
    t.rows.push_back({Cell("p" + std::to_string(r)), Cell("team " + std::to_string(rng() % 10)),
                      Cell(static_cast<double>(rng() % 100))});
  return t;
}

void BM_ExecuteAvgWithConditions(benchmark::State& state) {
  const Table t = numbers_table(state.range(0));
  SqlQuery q;
  q.sel = 2;
  q.agg = Agg::Avg;
  q.conds = {{1, Op::Eq, "Team 3"}, {2, Op::Gt, "20"}};
  for (auto _ : state) benchmark::DoNotOptimize(execute(q, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExecuteAvgWithConditions)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
