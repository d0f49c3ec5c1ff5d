#include <benchmark/benchmark.h>

#include "complasso/pipeline.hpp"
#include "complasso/simgen.hpp"

using namespace complasso;

namespace {

void BM_component_lasso_path(benchmark::State& state) {
  SimSpec spec = make_spec(SimName::ex4, 1);
  SimData data = generate(spec);
  Dataset d = standardize(subset_rows(data.raw, data.split.train));
  Dendrogram dend = build_dendrogram(sample_covariance(d), Linkage::average);
  Partition part = cut_into_k(dend, static_cast<int>(state.range(0)));
  std::vector<double> grid = default_lambda_grid(d.X, d.y, 1.0);
  for (auto _ : state) {
    ComponentPath path = component_lasso_path(d, part, 1.0, grid);
    benchmark::DoNotOptimize(path.post_betas);
  }
}
BENCHMARK(BM_component_lasso_path)->Arg(1)->Arg(5)->Arg(25);

void BM_full_selection(benchmark::State& state) {
  // One replicate of the p = 40 factor design, full (K, alpha, lambda) grid.
  SimSpec spec = make_spec(SimName::ex4, 2);
  SimData data = generate(spec);
  RawDataset train = subset_rows(data.raw, data.split.train);
  RawDataset val = subset_rows(data.raw, data.split.validation);
  SelectionGrid grid;
  grid.K_values = {1, 5, 9, 13, 17, 21, 25, 29, 33, 37};
  for (auto _ : state) {
    FitReport report = fit_estimator("component_lasso", train, val, grid);
    benchmark::DoNotOptimize(report.beta_hat);
  }
}
BENCHMARK(BM_full_selection)->Unit(benchmark::kMillisecond);

}  // namespace
