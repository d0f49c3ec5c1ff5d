#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "complasso/bench.hpp"
#include "complasso/cluster.hpp"
#include "complasso/data.hpp"
#include "complasso/pipeline.hpp"

namespace complasso {

using Json = nlohmann::json;

/// Reproducibility manifest for a standardized dataset:
/// {"n", "p", "col_means", "col_scales", "y_mean"}.
Json dataset_manifest(const Dataset& d);

Json partition_to_json(const Partition& part);  // {"K", "assignment", "tau"}
Partition partition_from_json(const Json& j);

Json fit_report_to_json(const FitReport& report);
FitReport fit_report_from_json(const Json& j);

Json component_model_to_json(const ComponentModel& model);

void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

/// Floats in CSV output carry 17 significant digits.
std::string format_double(double v);

/// Long-format coefficient path CSV: method, lambda, feature, coefficient.
void write_path_csv(const std::string& path,
                    const std::vector<std::pair<std::string, const EnetPath*>>& paths,
                    const std::vector<std::string>& feature_names);

/// Merge-list CSV (a, b, height) for external dendrogram plotting.
void write_dendrogram_csv(const std::string& path, const Dendrogram& dend);

/// Per-replicate results CSV:
/// estimator, replicate, beta_mse, test_mse, fp, fn, K, alpha, lambda.
void write_results_csv(const std::string& path, const bench::SuiteResult& result);

/// Summary table CSV: estimator, median_mse, se_mse, median_fp, se_fp,
/// median_fn, se_fn. Missing SEs (single replicate) are written as "NA".
void write_summary_csv(const std::string& path, const std::vector<bench::SummaryRow>& rows);

/// Rendered text table of the same summary.
std::string render_summary_table(const std::vector<bench::SummaryRow>& rows);

void write_noc_csv(const std::string& path, const std::vector<bench::NocBucket>& buckets);

}  // namespace complasso
