#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "complasso/cluster.hpp"
#include "complasso/data.hpp"
#include "complasso/solve.hpp"

namespace complasso {

struct SelectedParams {
  int K = 1;
  double alpha = 1.0;
  double lambda = 0.0;
  std::optional<double> tau;
};

/// Fitted component lasso at one (partition, alpha, lambda).
struct ComponentModel {
  Partition partition;
  std::vector<EnetPath> per_component;  // one single-lambda path per component
  NnlsResult weights;
  Vector pre_nnls_beta;  // concatenated per-component solutions
  Vector beta_hat;       // sum_k c_k * beta_k, standardized scale
  SelectedParams selected;
};

/// Full path version over a shared descending lambda grid: pre- and
/// post-NNLS combined coefficients and the NNLS weights per lambda.
struct ComponentPath {
  Partition partition;
  double alpha = 1.0;
  std::vector<double> grid;
  Matrix pre_betas;   // |grid| x p
  Matrix post_betas;  // |grid| x p
  Matrix weights;     // |grid| x K
};

struct SelectionGrid {
  std::vector<int> K_values;        // empty = default for p
  std::vector<double> alpha_values = {0.05, 0.5, 1.0};
  Linkage linkage = Linkage::average;
  int path_length = 100;
  std::optional<double> lambda_eps;  // default 1e-3, or 1e-2 when p > n
};

/// Default K grid: 1..p when p <= 50, else {1} plus 9 log-spaced values
/// up to 50.
std::vector<int> default_k_grid(int p);

/// A fitted, selected estimator together with the standardization record
/// needed to predict on raw-scale data.
struct FitReport {
  std::string estimator;
  Vector beta_hat;  // standardized scale
  double validation_mse = 0.0;
  SelectedParams params;
  int n_nonzero = 0;
  bool singular_flag = false;

  Vector col_means;
  Vector col_scales;
  double y_mean = 0.0;
  std::vector<std::string> feature_names;

  std::optional<Partition> partition;  // component lasso only
  Vector nnls_weights;                 // component lasso only

  /// Coefficients mapped back to the raw predictor scale.
  Vector beta_raw() const;
  double intercept_raw() const;
};

inline const std::vector<std::string> kEstimatorNames = {
    "lasso",      "rescaled_lasso", "lasso_ols_hybrid",  "ridge",
    "naive_enet", "enet",           "component_lasso"};

ComponentModel component_lasso_fit(const Dataset& d, const Partition& partition, double alpha,
                                   double lambda);

ComponentPath component_lasso_path(const Dataset& d, const Partition& partition, double alpha,
                                   const std::vector<double>& lambda_grid);

/// Component lasso objective: sum over components of half squared error of
/// the c_k-scaled component prediction plus the elastic-net penalty on that
/// component's coefficients.
double objective_J(const Dataset& d, const Partition& partition, const Vector& beta,
                   const Vector& c, double alpha, double lambda);

struct Holdout {
  Split split;
};

struct KFold {
  int k = 5;
  std::uint64_t seed = 0;
};

using Scheme = std::variant<Holdout, KFold>;

/// Fit the named estimator on standardized training data, tune on the raw
/// validation rows, and return the winning model. Ties in validation MSE are
/// broken by smaller K, then larger lambda, then smaller alpha.
FitReport fit_estimator(const std::string& name, const RawDataset& train, const RawDataset& val,
                        const SelectionGrid& grid);

/// Fit the named estimator on `data` at fixed parameters, without any grid
/// search. `lambda_scale` rescales params.lambda (the unnormalized objective
/// grows with n, so refitting on a larger set scales lambda by the row
/// ratio); the result is capped just below lambda_max of `data` so a
/// transferred lambda can never zero out the entire model. For the component
/// lasso the partition is re-derived by cutting the dendrogram of `data`
/// into params.K clusters unless `partition` is supplied, in which case that
/// partition is reused as-is.
FitReport fit_at_params(const std::string& name, const RawDataset& data,
                        const SelectedParams& params, const SelectionGrid& grid,
                        double lambda_scale = 1.0, const Partition* partition = nullptr);

/// Grid search over (K, alpha, lambda) with holdout or k-fold validation on
/// one dataset. Holdout trains on split.train and scores on split.validation;
/// k-fold averages fold scores and refits on all rows at the chosen
/// parameters.
FitReport select_model(const std::string& name, const RawDataset& data, const SelectionGrid& grid,
                       const Scheme& scheme);

/// Apply the stored standardization, compute X beta_hat, add y_mean. When
/// both the model and the caller supply feature names, columns are aligned
/// by name.
Vector predict(const FitReport& model, const Matrix& X_new_raw,
               const std::vector<std::string>& names = {});

}  // namespace complasso
