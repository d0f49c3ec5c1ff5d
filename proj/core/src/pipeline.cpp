#include "complasso/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "complasso/errors.hpp"
#include "complasso/metrics.hpp"
#include "complasso/rng.hpp"

namespace complasso {

namespace {

Matrix submatrix_cols(const Matrix& X, const IndexVec& cols) {
  Matrix out(X.rows(), static_cast<int>(cols.size()));
  for (std::size_t a = 0; a < cols.size(); ++a) out.col(static_cast<int>(a)) = X.col(cols[a]);
  return out;
}

void scatter(const Vector& sub, const IndexVec& cols, Vector& full) {
  for (std::size_t a = 0; a < cols.size(); ++a) full[cols[a]] = sub[static_cast<int>(a)];
}

int count_nonzero(const Vector& beta) {
  int n = 0;
  for (int j = 0; j < beta.size(); ++j) {
    if (std::abs(beta[j]) > kSupportEps) ++n;
  }
  return n;
}

}  // namespace

std::vector<int> default_k_grid(int p) {
  std::vector<int> ks;
  if (p <= 50) {
    for (int k = 1; k <= p; ++k) ks.push_back(k);
    return ks;
  }
  ks.push_back(1);
  const int kmax = 50;
  for (int i = 1; i <= 9; ++i) {
    const double t = static_cast<double>(i) / 9.0;
    const int k = static_cast<int>(std::lround(std::exp(t * std::log(kmax))));
    if (k > 1 && (ks.empty() || k != ks.back())) ks.push_back(k);
  }
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

Vector FitReport::beta_raw() const {
  return beta_hat.array() / col_scales.array();
}

double FitReport::intercept_raw() const {
  return y_mean - beta_raw().dot(col_means);
}

ComponentPath component_lasso_path(const Dataset& d, const Partition& partition, double alpha,
                                   const std::vector<double>& lambda_grid) {
  const int p = d.p();
  const int n = d.n();
  const int K = partition.K;
  const int L = static_cast<int>(lambda_grid.size());
  if (partition.p() != p) throw DimensionMismatchError("partition does not match p");

  ComponentPath out;
  out.partition = partition;
  out.alpha = alpha;
  out.grid = lambda_grid;
  out.pre_betas.setZero(L, p);
  out.post_betas.setZero(L, p);
  out.weights.setZero(L, K);

  std::vector<IndexVec> members(K);
  std::vector<EnetPath> paths(K);
  for (int k = 0; k < K; ++k) {
    members[k] = partition.members(k + 1);
    EnetConfig cfg;
    cfg.alpha = alpha;
    cfg.lambda_grid = lambda_grid;
    paths[k] = enet_path(submatrix_cols(d.X, members[k]), d.y, cfg);
  }

  Matrix A(n, K);
  for (int li = 0; li < L; ++li) {
    Vector pre = Vector::Zero(p);
    for (int k = 0; k < K; ++k) {
      const Vector bk = paths[k].betas.row(li).transpose();
      scatter(bk, members[k], pre);
      A.col(k) = submatrix_cols(d.X, members[k]) * bk;
    }
    const NnlsResult w = nnls(A, d.y);
    Vector post = Vector::Zero(p);
    for (int k = 0; k < K; ++k) {
      for (int j : members[k]) post[j] = w.c[k] * pre[j];
    }
    out.pre_betas.row(li) = pre.transpose();
    out.post_betas.row(li) = post.transpose();
    out.weights.row(li) = w.c.transpose();
  }
  return out;
}

ComponentModel component_lasso_fit(const Dataset& d, const Partition& partition, double alpha,
                                   double lambda) {
  const int p = d.p();
  const int K = partition.K;
  if (partition.p() != p) throw DimensionMismatchError("partition does not match p");

  ComponentModel model;
  model.partition = partition;
  model.pre_nnls_beta = Vector::Zero(p);
  model.beta_hat = Vector::Zero(p);

  std::vector<IndexVec> members(K);
  Matrix A(d.n(), K);
  for (int k = 0; k < K; ++k) {
    members[k] = partition.members(k + 1);
    const Matrix Xk = submatrix_cols(d.X, members[k]);
    const Vector bk = enet_fit(Xk, d.y, alpha, lambda);
    EnetPath single;
    single.grid = {lambda};
    single.alpha = alpha;
    single.betas = bk.transpose();
    single.n_iters = {0};
    single.converged = {true};
    model.per_component.push_back(std::move(single));
    scatter(bk, members[k], model.pre_nnls_beta);
    A.col(k) = Xk * bk;
  }
  model.weights = nnls(A, d.y);
  for (int k = 0; k < K; ++k) {
    for (int j : members[k]) model.beta_hat[j] = model.weights.c[k] * model.pre_nnls_beta[j];
  }
  model.selected = {K, alpha, lambda, partition.tau};
  return model;
}

double objective_J(const Dataset& d, const Partition& partition, const Vector& beta,
                   const Vector& c, double alpha, double lambda) {
  if (beta.size() != d.p()) throw DimensionMismatchError("beta does not match p");
  if (c.size() != partition.K) throw DimensionMismatchError("c does not match K");
  for (int k = 0; k < c.size(); ++k) {
    if (c[k] < 0.0) throw NegativeWeightError();
  }
  double J = 0.0;
  for (int k = 1; k <= partition.K; ++k) {
    const IndexVec members = partition.members(k);
    Vector pred = Vector::Zero(d.n());
    double l1 = 0.0, l2 = 0.0;
    for (int j : members) {
      pred += d.X.col(j) * beta[j];
      l1 += std::abs(beta[j]);
      l2 += beta[j] * beta[j];
    }
    J += 0.5 * (d.y - c[k - 1] * pred).squaredNorm() +
         lambda * (alpha * l1 + 0.5 * (1.0 - alpha) * l2);
  }
  return J;
}

namespace {

struct Candidate {
  SelectedParams params;
  Vector beta;  // standardized scale
  bool singular = false;
  std::optional<Partition> part;
  Vector weights;
};

double rescale_factor(const Vector& y, const Vector& y_hat) {
  const double denom = y_hat.squaredNorm();
  if (denom <= 0.0) return 1.0;
  return y_hat.dot(y) / denom;
}

std::vector<double> clean_alphas(const std::vector<double>& alphas) {
  std::vector<double> a = alphas;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.empty()) throw EmptyGridError();
  return a;
}

std::vector<Candidate> build_candidates(const std::string& name, const Dataset& d,
                                        const SelectionGrid& grid) {
  std::vector<Candidate> out;
  const Matrix& X = d.X;
  const Vector& y = d.y;

  auto lambda_grid_for = [&](double alpha) {
    const double eps = grid.lambda_eps ? *grid.lambda_eps : (d.p() > d.n() ? 1e-2 : 1e-3);
    return make_lambda_grid(lambda_max(X, y, alpha), grid.path_length, eps);
  };

  auto push_path = [&](const EnetPath& path, double alpha, bool rescaled) {
    for (int li = 0; li < static_cast<int>(path.grid.size()); ++li) {
      Candidate c;
      c.params = {1, alpha, path.grid[li], std::nullopt};
      c.beta = path.betas.row(li).transpose();
      if (rescaled) c.beta *= rescale_factor(y, X * c.beta);
      out.push_back(std::move(c));
    }
  };

  if (name == "lasso" || name == "rescaled_lasso") {
    EnetConfig cfg;
    cfg.alpha = 1.0;
    cfg.lambda_grid = lambda_grid_for(1.0);
    push_path(enet_path(X, y, cfg), 1.0, name == "rescaled_lasso");
  } else if (name == "lasso_ols_hybrid") {
    EnetConfig cfg;
    cfg.alpha = 1.0;
    cfg.lambda_grid = lambda_grid_for(1.0);
    const EnetPath path = enet_path(X, y, cfg);
    for (int li = 0; li < static_cast<int>(path.grid.size()); ++li) {
      Candidate c;
      c.params = {1, 1.0, path.grid[li], std::nullopt};
      c.beta = Vector::Zero(d.p());
      IndexVec support;
      for (int j = 0; j < d.p(); ++j) {
        if (std::abs(path.betas(li, j)) > kSupportEps) support.push_back(j);
      }
      if (!support.empty()) {
        const LstsqResult ls = least_squares(submatrix_cols(X, support), y);
        scatter(ls.beta, support, c.beta);
        c.singular = ls.singular;
      }
      out.push_back(std::move(c));
    }
  } else if (name == "ridge") {
    const double top = lambda_max(X, y, 0.0);
    for (double l2 : make_lambda_grid(top, 100, 1e-8)) {
      Candidate c;
      c.params = {1, 0.0, l2, std::nullopt};
      c.beta = ridge(X, y, l2);
      out.push_back(std::move(c));
    }
  } else if (name == "naive_enet" || name == "enet") {
    for (double alpha : clean_alphas(grid.alpha_values)) {
      EnetConfig cfg;
      cfg.alpha = alpha;
      cfg.lambda_grid = lambda_grid_for(alpha);
      push_path(enet_path(X, y, cfg), alpha, name == "enet");
    }
  } else if (name == "component_lasso") {
    const Dendrogram dend = build_dendrogram(sample_covariance(d), grid.linkage);
    std::vector<int> ks = grid.K_values.empty() ? default_k_grid(d.p()) : grid.K_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.empty()) throw EmptyGridError();
    for (int k : ks) {
      if (k < 1 || k > d.p()) throw BadKError(k, d.p());
      const Partition part = cut_into_k(dend, k);
      for (double alpha : clean_alphas(grid.alpha_values)) {
        const std::vector<double> lgrid = lambda_grid_for(alpha);
        const ComponentPath cpath = component_lasso_path(d, part, alpha, lgrid);
        for (int li = 0; li < static_cast<int>(lgrid.size()); ++li) {
          Candidate c;
          c.params = {part.K, alpha, lgrid[li], part.tau};
          c.beta = cpath.post_betas.row(li).transpose();
          c.part = part;
          c.weights = cpath.weights.row(li).transpose();
          out.push_back(std::move(c));
        }
      }
    }
  } else {
    throw UnknownEstimatorError(name);
  }
  return out;
}

bool better(double mse_a, const SelectedParams& a, double mse_b, const SelectedParams& b) {
  if (mse_a != mse_b) return mse_a < mse_b;
  if (a.K != b.K) return a.K < b.K;
  if (a.lambda != b.lambda) return a.lambda > b.lambda;
  return a.alpha < b.alpha;
}

FitReport report_from(const std::string& name, const Dataset& d, const Candidate& c,
                      double val_mse) {
  FitReport r;
  r.estimator = name;
  r.beta_hat = c.beta;
  r.validation_mse = val_mse;
  r.params = c.params;
  r.n_nonzero = count_nonzero(c.beta);
  r.singular_flag = c.singular;
  r.col_means = d.col_means;
  r.col_scales = d.col_scales;
  r.y_mean = d.y_mean;
  r.feature_names = d.feature_names;
  r.partition = c.part;
  r.nnls_weights = c.weights;
  return r;
}

Matrix standardize_matrix(const Matrix& X, const Vector& means, const Vector& scales) {
  return (X.rowwise() - means.transpose()).array().rowwise() / scales.transpose().array();
}

}  // namespace

FitReport fit_estimator(const std::string& name, const RawDataset& train, const RawDataset& val,
                        const SelectionGrid& grid) {
  if (val.p() != train.p()) throw DimensionMismatchError("validation p differs from training p");
  const Dataset d = standardize(train);
  const std::vector<Candidate> cands = build_candidates(name, d, grid);
  if (cands.empty()) throw EmptyGridError();

  const Matrix Xval = standardize_matrix(val.X, d.col_means, d.col_scales);
  int best = -1;
  double best_mse = 0.0;
  for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
    const Vector y_hat = (Xval * cands[i].beta).array() + d.y_mean;
    const double mse = (val.y - y_hat).squaredNorm() / static_cast<double>(val.y.size());
    if (best < 0 || better(mse, cands[i].params, best_mse, cands[best].params)) {
      best = i;
      best_mse = mse;
    }
  }
  return report_from(name, d, cands[best], best_mse);
}

FitReport fit_at_params(const std::string& name, const RawDataset& data,
                        const SelectedParams& params, const SelectionGrid& grid,
                        double lambda_scale, const Partition* partition) {
  const Dataset d = standardize(data);
  const Matrix& X = d.X;
  const Vector& y = d.y;
  const bool pure_lasso =
      name == "lasso" || name == "rescaled_lasso" || name == "lasso_ols_hybrid";
  const double cap_alpha = pure_lasso ? 1.0 : params.alpha;
  // Cap the transferred lambda just below this dataset's lambda_max so the
  // refit can never collapse to the all-zero model.
  const double lambda = name == "ridge"
                            ? params.lambda * lambda_scale
                            : std::min(params.lambda * lambda_scale,
                                       0.999 * lambda_max(X, y, cap_alpha));

  Candidate c;
  c.params = params;
  c.params.lambda = lambda;

  if (name == "lasso") {
    c.beta = enet_fit(X, y, 1.0, lambda);
  } else if (name == "rescaled_lasso") {
    c.beta = enet_fit(X, y, 1.0, lambda);
    c.beta *= rescale_factor(y, X * c.beta);
  } else if (name == "lasso_ols_hybrid") {
    const Vector b = enet_fit(X, y, 1.0, lambda);
    c.beta = Vector::Zero(d.p());
    IndexVec support;
    for (int j = 0; j < d.p(); ++j) {
      if (std::abs(b[j]) > kSupportEps) support.push_back(j);
    }
    if (!support.empty()) {
      const LstsqResult ls = least_squares(submatrix_cols(X, support), y);
      scatter(ls.beta, support, c.beta);
      c.singular = ls.singular;
    }
  } else if (name == "ridge") {
    c.beta = ridge(X, y, lambda);
  } else if (name == "naive_enet" || name == "enet") {
    c.beta = enet_fit(X, y, params.alpha, lambda);
    if (name == "enet") c.beta *= rescale_factor(y, X * c.beta);
  } else if (name == "component_lasso") {
    if (params.K < 1 || params.K > d.p()) throw BadKError(params.K, d.p());
    Partition part;
    if (partition != nullptr) {
      part = *partition;
    } else {
      const Dendrogram dend = build_dendrogram(sample_covariance(d), grid.linkage);
      part = cut_into_k(dend, params.K);
    }
    const ComponentModel model = component_lasso_fit(d, part, params.alpha, lambda);
    c.beta = model.beta_hat;
    c.part = part;
    c.weights = model.weights.c;
    c.params.tau = part.tau;
  } else {
    throw UnknownEstimatorError(name);
  }
  return report_from(name, d, c, 0.0);
}

FitReport select_model(const std::string& name, const RawDataset& data, const SelectionGrid& grid,
                       const Scheme& scheme) {
  if (const auto* hold = std::get_if<Holdout>(&scheme)) {
    return fit_estimator(name, subset_rows(data, hold->split.train),
                         subset_rows(data, hold->split.validation), grid);
  }
  const auto& kf = std::get<KFold>(scheme);
  if (kf.k < 2 || kf.k > data.n()) throw BadFractionsError("k-fold needs 2 <= k <= n");

  IndexVec order(data.n());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(kf.seed);
  rng.shuffle(order);

  // Candidates at the same (cell, lambda-index) position align across folds.
  std::vector<double> score_sum;
  std::vector<int> score_count;
  for (int f = 0; f < kf.k; ++f) {
    IndexVec train_rows, val_rows;
    for (int i = 0; i < data.n(); ++i) {
      (i % kf.k == f ? val_rows : train_rows).push_back(order[i]);
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(val_rows.begin(), val_rows.end());
    const RawDataset tr = subset_rows(data, train_rows);
    const RawDataset va = subset_rows(data, val_rows);
    const Dataset d = standardize(tr);
    const std::vector<Candidate> cands = build_candidates(name, d, grid);
    if (score_sum.empty()) {
      score_sum.assign(cands.size(), 0.0);
      score_count.assign(cands.size(), 0);
    }
    const Matrix Xval = standardize_matrix(va.X, d.col_means, d.col_scales);
    for (std::size_t i = 0; i < cands.size() && i < score_sum.size(); ++i) {
      const Vector y_hat = (Xval * cands[i].beta).array() + d.y_mean;
      score_sum[i] += (va.y - y_hat).squaredNorm() / static_cast<double>(va.y.size());
      score_count[i] += 1;
    }
  }
  if (score_sum.empty()) throw EmptyGridError();

  // Refit on the full data and score the refit candidates by CV average.
  const Dataset d = standardize(data);
  const std::vector<Candidate> cands = build_candidates(name, d, grid);
  int best = -1;
  double best_mse = 0.0;
  const std::size_t n_scored = std::min(cands.size(), score_sum.size());
  for (std::size_t i = 0; i < n_scored; ++i) {
    if (score_count[i] == 0) continue;
    const double mse = score_sum[i] / score_count[i];
    if (best < 0 ||
        better(mse, cands[i].params, best_mse, cands[static_cast<std::size_t>(best)].params)) {
      best = static_cast<int>(i);
      best_mse = mse;
    }
  }
  return report_from(name, d, cands[static_cast<std::size_t>(best)], best_mse);
}

Vector predict(const FitReport& model, const Matrix& X_new_raw,
               const std::vector<std::string>& names) {
  const int p = static_cast<int>(model.beta_hat.size());
  if (X_new_raw.cols() != p) throw DimensionMismatchError("X_new has wrong number of columns");

  Matrix X = X_new_raw;
  if (!names.empty() && !model.feature_names.empty() && names != model.feature_names) {
    for (int j = 0; j < p; ++j) {
      const auto it = std::find(names.begin(), names.end(), model.feature_names[j]);
      if (it == names.end()) throw MissingColumnError(model.feature_names[j]);
      X.col(j) = X_new_raw.col(static_cast<int>(it - names.begin()));
    }
  }
  const Matrix Xs = standardize_matrix(X, model.col_means, model.col_scales);
  return (Xs * model.beta_hat).array() + model.y_mean;
}

}  // namespace complasso
