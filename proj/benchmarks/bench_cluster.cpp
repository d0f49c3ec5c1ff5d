#include <benchmark/benchmark.h>

#include <random>

#include "complasso/cluster.hpp"

using namespace complasso;

namespace {

Covariance make_corr(int p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ud(-0.95, 0.95);
  Covariance c;
  c.S = Matrix::Identity(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) c.S(i, j) = c.S(j, i) = ud(gen);
  return c;
}

void BM_build_dendrogram(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Covariance S = make_corr(p, 3);
  for (auto _ : state) {
    Dendrogram d = build_dendrogram(S, Linkage::average);
    benchmark::DoNotOptimize(d.merges);
  }
}
BENCHMARK(BM_build_dendrogram)->Arg(40)->Arg(200)->Arg(800);

void BM_threshold_components(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  Covariance S = make_corr(p, 5);
  for (auto _ : state) {
    Partition part = threshold_components(S, 0.6);
    benchmark::DoNotOptimize(part.assignment);
  }
}
BENCHMARK(BM_threshold_components)->Arg(40)->Arg(200)->Arg(800);

}  // namespace
