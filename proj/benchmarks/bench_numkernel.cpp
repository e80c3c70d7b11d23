#include <benchmark/benchmark.h>

#include <random>

#include "typesql/numkernel/lstm.hpp"
#include "typesql/numkernel/ops.hpp"

namespace {

using namespace typesql;

Matrix gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 0.1);
  Matrix m(r, c);
  for (double& x : m.data()) x = n(rng);
  return m;
}

void BM_BiLstmEncode(benchmark::State& state) {
  const std::size_t T = state.range(0), d = 100, h = 60;
  std::mt19937_64 rng(1);
  const LstmWeights fw{gaussian(4 * h, d + h, rng), std::vector<double>(4 * h)};
  const LstmWeights bw{gaussian(4 * h, d + h, rng), std::vector<double>(4 * h)};
  std::vector<std::vector<double>> seq(T, gaussian(1, d, rng).data());
  for (auto _ : state) benchmark::DoNotOptimize(bilstm_encode(seq, fw, bw));
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_BiLstmEncode)->Arg(8)->Arg(16)->Arg(32);

void BM_MatmulNtBackward(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::mt19937_64 rng(2);
  ParamStore store;
  store.add_zeros("W", {n, n}).assign(gaussian(n, n, rng));
  const Matrix x = gaussian(16, n, rng);
  for (auto _ : state) {
    Tape tape(true);
    const Var y = sum_rows(transpose(sum_rows(matmul_nt(tape.constant(x), tape.param(store.at("W"))))));
    backward(store, y);
  }
}
BENCHMARK(BM_MatmulNtBackward)->Arg(64)->Arg(128);

}  // namespace
