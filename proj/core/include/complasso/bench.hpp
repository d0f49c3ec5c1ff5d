#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "complasso/pipeline.hpp"
#include "complasso/simgen.hpp"

namespace complasso::bench {

/// One estimator evaluated on one simulated replicate.
struct ReplicateResult {
  std::string estimator;
  int replicate = 0;
  double beta_mse = 0.0;
  double test_mse = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  int K = 1;
  double alpha = 1.0;
  double lambda = 0.0;
  int n_nonzero = 0;
  double misclass = -1.0;  // signal-pair misclassification; < 0 when n/a
};

struct BenchOptions {
  int n_reps = 100;
  std::uint64_t seed = 42;
  int jobs = 0;  // 0 = hardware concurrency
  std::vector<std::string> estimators;  // empty = default set for the suite
  SelectionGrid grid;
};

struct SuiteResult {
  SimName suite;
  std::vector<ReplicateResult> rows;  // ordered by replicate, then estimator
};

/// Default estimator list: the seven standard methods, plus
/// component_lasso_k2 for the orthogonal suite.
std::vector<std::string> default_estimators(SimName suite);

/// K grid scanned by the harness for a suite: every 4th value from 1 for the
/// p = 40 suites, empty (meaning the library default, all K) for p = 8.
std::vector<int> suite_k_grid(SimName suite);

/// Run every estimator on n_reps replicates of the named design; replicate r
/// uses seed + r. Replicates run concurrently and are merged in replicate
/// order, so output is independent of scheduling.
SuiteResult run_suite(SimName suite, const BenchOptions& opts);

struct SummaryRow {
  std::string estimator;
  double median_mse = 0.0, se_mse = 0.0;
  double median_fp = 0.0, se_fp = 0.0;
  double median_fn = 0.0, se_fn = 0.0;
};

/// Per-estimator medians with bootstrap standard errors of the median
/// (1000 seeded resamples). With a single replicate the SEs are NaN.
std::vector<SummaryRow> summarize(const SuiteResult& result, std::uint64_t boot_seed = 1,
                                  int boot_reps = 1000);

struct NocBucket {
  int K = 1;
  int count = 0;
  double mean_misclass = 0.0;
};

/// Distribution of the selected number of components for component_lasso
/// rows, with the mean signal misclassification per bucket.
std::vector<NocBucket> noc_histogram(const SuiteResult& result);

double median(std::vector<double> values);
double bootstrap_median_se(const std::vector<double>& values, int n_boot, std::uint64_t seed);

}  // namespace complasso::bench
