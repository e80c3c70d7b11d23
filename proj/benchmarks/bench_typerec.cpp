#include <benchmark/benchmark.h>

#include "typesql/typerec/recognizer.hpp"

namespace {

using namespace typesql;

Table mad_spoofs() {
  Table t;
  t.schema.id = "mad_spoofs";
  t.schema.columns = {{"Date", ColumnKind::Text},
                      {"Issue", ColumnKind::Real},
                      {"Spoofed Title", ColumnKind::Text},
                      {"Artist", ColumnKind::Text},
                      {"Writer", ColumnKind::Text}};
  for (int r = 0; r < 40; ++r)
    t.rows.push_back({Cell("1998"), Cell(80.0 + r * 0.5), Cell("title " + std::to_string(r)),
                      Cell(r == 17 ? "Mort Drucker" : "artist " + std::to_string(r)), Cell("Dick DeBartolo")});
  return t;
}

constexpr const char* kQuestion = "What spoofed title had Mort Drucker as the artist in issue 88.5?";

void BM_RecognizeContent(benchmark::State& state) {
  const Table t = mad_spoofs();
  for (auto _ : state) benchmark::DoNotOptimize(recognize(kQuestion, t.schema, &t, TypingMode::Content, nullptr));
}
BENCHMARK(BM_RecognizeContent);

void BM_RecognizeInsensitive(benchmark::State& state) {
  const Table t = mad_spoofs();
  Gazetteer g;
  g.add("mort drucker", TypeKind::Person);
  for (auto _ : state) benchmark::DoNotOptimize(recognize(kQuestion, t.schema, nullptr, TypingMode::Insensitive, &g));
}
BENCHMARK(BM_RecognizeInsensitive);

}  // namespace
