// serial reference vs OpenMP kernels: dense RREF rank and the sparse rank of a resolution differential

#include <benchmark/benchmark.h>

#include <random>

#include "kres/builder.hpp"
#include "kres/ringfile.hpp"

using namespace kres;

namespace {

DenseMatrix random_dense(std::size_t n, const PrimeField& F) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<Fp> d(0, F.p() - 1);
  DenseMatrix m(n, n);
  for (auto& v : m.data) v = d(gen);
  return m;
}

const SparseMatrix& example_differential() {
  static SparseMatrix S = [] {
    auto rf = example_T_ring();
    auto R = build_ring(rf);
    auto K = std::make_shared<const KoszulComplex>(R);
    auto b = *class_T_basis(rf, *K);
    auto F = assemble_T(K, b, sequence_tables(3, 4, 6, 3, 8), 8);
    return flatten(F.differentials[8], *R);
  }();
  return S;
}

void BM_DenseRank(benchmark::State& st, Backend b) {
  PrimeField F;
  auto m = random_dense(static_cast<std::size_t>(st.range(0)), F);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m, F, b));
}

void BM_SparseRank(benchmark::State& st, Backend b) {
  PrimeField F;
  const auto& S = example_differential();
  for (auto _ : st) benchmark::DoNotOptimize(rank(S, F, b));
}

}  // namespace

BENCHMARK_CAPTURE(BM_DenseRank, serial, Backend::Serial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DenseRank, parallel, Backend::Parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SparseRank, serial, Backend::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SparseRank, parallel, Backend::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
