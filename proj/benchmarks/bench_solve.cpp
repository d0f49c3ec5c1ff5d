#include <benchmark/benchmark.h>

#include <random>

#include "complasso/solve.hpp"

using namespace complasso;

namespace {

std::pair<Matrix, Vector> make_problem(int n, int p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Matrix X(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = nd(gen);
  Vector beta = Vector::Zero(p);
  for (int j = 0; j < p; j += 4) beta[j] = 2.0;
  Vector y = X * beta;
  for (int i = 0; i < n; ++i) y[i] += 3.0 * nd(gen);
  return {X, y};
}

void BM_enet_path(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  auto [X, y] = make_problem(n, p, 7);
  EnetConfig cfg;
  cfg.alpha = 1.0;
  cfg.lambda_grid = default_lambda_grid(X, y, cfg.alpha);
  for (auto _ : state) {
    EnetPath path = enet_path(X, y, cfg);
    benchmark::DoNotOptimize(path.betas);
  }
  state.SetLabel(std::to_string(n) + "x" + std::to_string(p) + ", 100-point path");
}
BENCHMARK(BM_enet_path)->Args({100, 40})->Args({200, 200})->Args({100, 1000});

void BM_enet_fit_single(benchmark::State& state) {
  const int n = 200, p = static_cast<int>(state.range(0));
  auto [X, y] = make_problem(n, p, 11);
  const double lambda = 0.1 * lambda_max(X, y, 0.5);
  for (auto _ : state) {
    Vector b = enet_fit(X, y, 0.5, lambda);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_enet_fit_single)->Arg(40)->Arg(200)->Arg(800);

void BM_nnls(benchmark::State& state) {
  const int n = 400, K = static_cast<int>(state.range(0));
  auto [A, y] = make_problem(n, K, 13);
  for (auto _ : state) {
    NnlsResult r = nnls(A, y);
    benchmark::DoNotOptimize(r.c);
  }
}
BENCHMARK(BM_nnls)->Arg(5)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
