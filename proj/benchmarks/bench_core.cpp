#include <benchmark/benchmark.h>

#include "revive/random.hpp"
#include "revive/safe_update.hpp"
#include "revive/simulator.hpp"
#include "revive/spectral_basis.hpp"
#include "revive/spectral_metrics.hpp"

namespace {

using namespace revive;

Matrix gaussian(std::size_t m, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return Matrix(rng.normal_matrix(m, n));
}

void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix w = gaussian(n, n * 3 / 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(svd(w));
}
BENCHMARK(BM_Svd)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SvdFactorization f = svd(gaussian(n, n, 2));
  const Matrix d = gaussian(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(d, f));
}
BENCHMARK(BM_Decompose)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

// Filter against a cached factorization; the common case inside a session.
void BM_FilterWithBasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SvdFactorization f = svd(synthesize_base(n, n * 3 / 4, PowerLawSpectrum{}, 4));
  const DominantSubspace d = select_k(f, 0.10);
  const Matrix delta = gaussian(n, n * 3 / 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(filter_with_basis(f, d, delta));
}
BENCHMARK(BM_FilterWithBasis)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_FilterUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix w = synthesize_base(n, n * 3 / 4, PowerLawSpectrum{}, 4);
  const Matrix delta = gaussian(n, n * 3 / 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(filter_update(w, delta, 0.10));
}
BENCHMARK(BM_FilterUpdate)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_LowRankSimilarity(benchmark::State& state) {
  const Matrix w0 = synthesize_base(128, 96, PowerLawSpectrum{}, 6);
  const Matrix wt = w0 + 0.01 * gaussian(128, 96, 7);
  for (auto _ : state) benchmark::DoNotOptimize(low_rank_similarity(w0, wt));
}
BENCHMARK(BM_LowRankSimilarity)->Unit(benchmark::kMicrosecond);

void BM_SimulationRound(benchmark::State& state) {
  SimulationConfig c;
  c.seed = 8;
  c.rounds = 1;
  c.edits_per_round = 20;
  c.filter_enabled = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(c));
}
BENCHMARK(BM_SimulationRound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode tied to another compiler
// release, so the entry point is defined here.
BENCHMARK_MAIN();
