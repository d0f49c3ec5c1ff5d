#include <cmath>
#include <random>

#include "complasso/cluster.hpp"
#include "complasso/data.hpp"
#include "complasso/errors.hpp"
#include "complasso/pipeline.hpp"
#include "complasso/solve.hpp"
#include "doctest.h"

using namespace complasso;

namespace {

std::mt19937_64& gen() {
  static std::mt19937_64 g(90210);
  return g;
}

Matrix random_matrix(int n, int p, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Matrix X(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = scale * nd(gen());
  return X;
}

Vector random_vector(int n, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = scale * nd(gen());
  return y;
}

RawDataset raw_from(const Matrix& X, const Vector& y) {
  RawDataset r;
  r.X = X;
  r.y = y;
  return r;
}

Partition make_partition(std::vector<int> assignment, int K) {
  Partition p;
  p.assignment = std::move(assignment);
  p.K = K;
  return p;
}

/// X with two exactly orthogonal 3-column blocks (after centering).
Matrix block_orthogonal_design(int n) {
  Matrix B1 = random_matrix(n, 3);
  Matrix B2 = random_matrix(n, 3);
  B1.rowwise() -= B1.colwise().mean();
  B2.rowwise() -= B2.colwise().mean();
  Matrix Q = Eigen::HouseholderQR<Matrix>(B1).householderQ() * Matrix::Identity(n, 3);
  B2 -= Q * (Q.transpose() * B2);
  Matrix X(n, 6);
  X << B1, B2;
  return X;
}

double enet_objective(const Matrix& X, const Vector& y, const Vector& b, double alpha,
                      double lambda) {
  return 0.5 * (y - X * b).squaredNorm() +
         lambda * (alpha * b.cwiseAbs().sum() + 0.5 * (1.0 - alpha) * b.squaredNorm());
}

}  // namespace

TEST_CASE("component_lasso_fit with K = 1 is the rescaled elastic net") {
  Matrix X = random_matrix(30, 4);
  Vector y = random_vector(30, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition one = make_partition({1, 1, 1, 1}, 1);
  for (double alpha : {1.0, 0.5}) {
    double lambda = 0.3 * lambda_max(d.X, d.y, alpha);
    ComponentModel m = component_lasso_fit(d, one, alpha, lambda);
    Vector b = enet_fit(d.X, d.y, alpha, lambda);
    Vector u = d.X * b;
    double c = u.squaredNorm() > 0 ? std::max(0.0, u.dot(d.y) / u.squaredNorm()) : 0.0;
    REQUIRE(m.weights.c.size() == 1);
    CHECK(m.weights.c[0] == doctest::Approx(c));
    CHECK((m.pre_nnls_beta - b).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.beta_hat - Vector(c * b)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("block-orthogonal design: pre-NNLS solution equals the full lasso") {
  Matrix X = block_orthogonal_design(40);
  Vector y = random_vector(40, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 1, 1, 2, 2, 2}, 2);
  double lambda = 0.2 * lambda_max(d.X, d.y, 1.0);
  ComponentModel m = component_lasso_fit(d, part, 1.0, lambda);
  Vector full = enet_fit(d.X, d.y, 1.0, lambda);
  CHECK((m.pre_nnls_beta - full).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("per-component coefficients live only on their own block") {
  Matrix X = random_matrix(30, 6);
  Vector y = random_vector(30, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 2, 1, 3, 2, 3}, 3);
  ComponentModel m = component_lasso_fit(d, part, 1.0, 0.5);
  // pre_nnls_beta restricted to block k must reproduce the enet fit of
  // block k alone; cross-block entries are structurally zero.
  for (int k = 1; k <= 3; ++k) {
    IndexVec mem = part.members(k);
    Matrix Xk(30, static_cast<int>(mem.size()));
    for (std::size_t j = 0; j < mem.size(); ++j) Xk.col(static_cast<int>(j)) = d.X.col(mem[j]);
    Vector bk = enet_fit(Xk, d.y, 1.0, 0.5);
    for (std::size_t j = 0; j < mem.size(); ++j)
      CHECK(m.pre_nnls_beta[mem[j]] == doctest::Approx(bk[static_cast<int>(j)]));
  }
}

TEST_CASE("a component whose fit is zero gets NNLS weight zero") {
  // Block 2 is pure noise and lambda is above its own lambda_max, so its
  // enet solution is identically zero and its weight must be 0.
  Matrix X = block_orthogonal_design(50);
  Vector y = Vector(5.0 * X.col(0));
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 1, 1, 2, 2, 2}, 2);
  Matrix X2 = d.X.rightCols(3);
  double lam2 = lambda_max(X2, d.y, 1.0);
  double lambda = std::min(1.5 * lam2, 0.9 * lambda_max(d.X, d.y, 1.0));
  REQUIRE(lambda > lam2);
  ComponentModel m = component_lasso_fit(d, part, 1.0, lambda);
  CHECK(m.pre_nnls_beta.tail(3).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(m.weights.c[1] == doctest::Approx(0.0));
  CHECK(m.beta_hat.tail(3).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("NNLS residual is orthogonal to the active component predictions") {
  Matrix X = random_matrix(40, 6);
  Vector y = random_vector(40, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 1, 2, 2, 3, 3}, 3);
  ComponentModel m = component_lasso_fit(d, part, 1.0, 0.2);
  for (int k = 1; k <= 3; ++k) {
    if (m.weights.c[k - 1] <= 0) continue;
    IndexVec mem = part.members(k);
    Vector uk = Vector::Zero(40);
    for (int j : mem) uk += d.X.col(j) * m.pre_nnls_beta[j];
    Vector resid = d.y - d.X * m.beta_hat;
    CHECK(std::abs(uk.dot(resid)) < 1e-6 * (1.0 + uk.norm() * resid.norm()));
  }
}

TEST_CASE("objective_J: worked values") {
  Matrix X = random_matrix(25, 4);
  Vector y = random_vector(25, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 1, 2, 2}, 2);

  // All-zero coefficients: every component leaves the full residual.
  Vector zero = Vector::Zero(4);
  Vector ones = Vector::Ones(2);
  CHECK(objective_J(d, part, zero, ones, 1.0, 0.7) ==
        doctest::Approx(2.0 * 0.5 * d.y.squaredNorm()));

  // K = 1 with c = 1 reduces to the plain elastic-net objective.
  Partition one = make_partition({1, 1, 1, 1}, 1);
  Vector b = random_vector(4);
  Vector c1 = Vector::Ones(1);
  for (double alpha : {1.0, 0.5}) {
    CHECK(objective_J(d, one, b, c1, alpha, 0.7) ==
          doctest::Approx(enet_objective(d.X, d.y, b, alpha, 0.7)));
  }
}

TEST_CASE("component_lasso_path agrees with pointwise fits along the grid") {
  Matrix X = random_matrix(30, 5);
  Vector y = random_vector(30, 2.0);
  Dataset d = standardize(raw_from(X, y));
  Partition part = make_partition({1, 2, 1, 2, 2}, 2);
  std::vector<double> grid = make_lambda_grid(lambda_max(d.X, d.y, 1.0), 8, 1e-3);
  ComponentPath path = component_lasso_path(d, part, 1.0, grid);
  REQUIRE(path.grid.size() == grid.size());
  for (std::size_t li = 0; li < grid.size(); li += 3) {
    ComponentModel m = component_lasso_fit(d, part, 1.0, grid[li]);
    Vector pre = path.pre_betas.row(static_cast<int>(li)).transpose();
    Vector post = path.post_betas.row(static_cast<int>(li)).transpose();
    CHECK((pre - m.pre_nnls_beta).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((post - m.beta_hat).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("fit_at_params identities between estimators at fixed parameters") {
  Matrix X = random_matrix(60, 5);
  Vector y = Vector(2.0 * X.col(0) - 1.0 * X.col(2) + random_vector(60));
  RawDataset data = raw_from(X, y);
  Dataset d = standardize(data);
  SelectionGrid grid;
  SelectedParams params;
  params.K = 1;
  params.alpha = 0.5;
  params.lambda = 0.1 * lambda_max(d.X, d.y, 0.5);

  FitReport naive = fit_at_params("naive_enet", data, params, grid);
  FitReport enet = fit_at_params("enet", data, params, grid);
  // enet = naive rescaled by the scalar least-squares factor on X beta.
  Vector u = d.X * naive.beta_hat;
  double c = u.dot(d.y) / u.squaredNorm();
  CHECK((enet.beta_hat - Vector(c * naive.beta_hat)).cwiseAbs().maxCoeff() < 1e-8);

  SelectedParams lp = params;
  lp.alpha = 1.0;
  lp.lambda = 0.1 * lambda_max(d.X, d.y, 1.0);
  FitReport lasso = fit_at_params("lasso", data, lp, grid);
  FitReport rescaled = fit_at_params("rescaled_lasso", data, lp, grid);
  Vector ul = d.X * lasso.beta_hat;
  double cl = ul.dot(d.y) / ul.squaredNorm();
  CHECK((rescaled.beta_hat - Vector(cl * lasso.beta_hat)).cwiseAbs().maxCoeff() < 1e-8);

  // Hybrid: unpenalized least squares restricted to the lasso support.
  FitReport hybrid = fit_at_params("lasso_ols_hybrid", data, lp, grid);
  IndexVec supp;
  for (int j = 0; j < 5; ++j)
    if (std::abs(lasso.beta_hat[j]) > 1e-12) supp.push_back(j);
  REQUIRE(!supp.empty());
  Matrix Xs(60, static_cast<int>(supp.size()));
  for (std::size_t j = 0; j < supp.size(); ++j) Xs.col(static_cast<int>(j)) = d.X.col(supp[j]);
  Vector ls = least_squares(Xs, d.y).beta;
  for (std::size_t j = 0; j < supp.size(); ++j)
    CHECK(hybrid.beta_hat[supp[j]] == doctest::Approx(ls[static_cast<int>(j)]));
  for (int j = 0; j < 5; ++j)
    if (std::abs(lasso.beta_hat[j]) <= 1e-12) CHECK(hybrid.beta_hat[j] == doctest::Approx(0.0));

  // Ridge keeps every coefficient nonzero.
  FitReport rr = fit_at_params("ridge", data, params, grid);
  CHECK(rr.n_nonzero == 5);

  // Component lasso with K = 1 coincides with the rescaled-but-clamped enet.
  FitReport comp = fit_at_params("component_lasso", data, params, grid);
  if (c >= 0) CHECK((comp.beta_hat - enet.beta_hat).cwiseAbs().maxCoeff() < 1e-8);

  CHECK_THROWS_AS(fit_at_params("no_such", data, params, grid), UnknownEstimatorError);
}

TEST_CASE("fit_at_params caps a transferred lambda below lambda_max") {
  Matrix X = random_matrix(40, 4);
  Vector y = Vector(3.0 * X.col(1) + random_vector(40, 0.5));
  RawDataset data = raw_from(X, y);
  SelectionGrid grid;
  SelectedParams params;
  params.alpha = 1.0;
  params.lambda = 1e6;  // far above lambda_max
  FitReport r = fit_at_params("lasso", data, params, grid);
  CHECK(r.n_nonzero >= 1);  // the cap keeps the model from zeroing out
  Dataset d = standardize(data);
  CHECK(r.params.lambda == doctest::Approx(0.999 * lambda_max(d.X, d.y, 1.0)));
}

TEST_CASE("fit_at_params reuses a supplied partition verbatim") {
  Matrix X = random_matrix(50, 6);
  Vector y = Vector(2.0 * X.col(0) + random_vector(50));
  RawDataset data = raw_from(X, y);
  SelectionGrid grid;
  SelectedParams params;
  params.K = 2;
  params.alpha = 1.0;
  params.lambda = 0.5;
  Partition part = make_partition({1, 2, 2, 1, 2, 1}, 2);
  FitReport r = fit_at_params("component_lasso", data, params, grid, 1.0, &part);
  REQUIRE(r.partition.has_value());
  CHECK(r.partition->assignment == part.assignment);
}

TEST_CASE("fit_estimator is deterministic and its report is self-consistent") {
  Matrix X = random_matrix(60, 6);
  Vector y = Vector(2.5 * X.col(0) - 1.5 * X.col(3) + random_vector(60));
  RawDataset all = raw_from(X, y);
  Split s = split_indices(60, 40, 20, 0, 77);
  RawDataset train = subset_rows(all, s.train);
  RawDataset val = subset_rows(all, s.validation);
  SelectionGrid grid;
  grid.K_values = {1, 2, 3};
  for (const std::string& name : kEstimatorNames) {
    FitReport a = fit_estimator(name, train, val, grid);
    FitReport b = fit_estimator(name, train, val, grid);
    CHECK(a.beta_hat == b.beta_hat);
    CHECK(a.validation_mse == doctest::Approx(b.validation_mse));
    CHECK(a.params.lambda == doctest::Approx(b.params.lambda));

    // Reported validation MSE matches predicting on the raw validation rows.
    Vector pred = predict(a, val.X);
    double mse = (val.y - pred).squaredNorm() / static_cast<double>(val.y.size());
    CHECK(a.validation_mse == doctest::Approx(mse).epsilon(1e-8));

    int nz = 0;
    for (int j = 0; j < a.beta_hat.size(); ++j)
      if (std::abs(a.beta_hat[j]) > 1e-12) ++nz;
    CHECK(a.n_nonzero == nz);
  }
}

TEST_CASE("duplicated grid values change nothing") {
  Matrix X = random_matrix(50, 4);
  Vector y = Vector(2.0 * X.col(1) + random_vector(50));
  RawDataset all = raw_from(X, y);
  Split s = split_indices(50, 35, 15, 0, 3);
  RawDataset train = subset_rows(all, s.train);
  RawDataset val = subset_rows(all, s.validation);
  SelectionGrid g1;
  g1.K_values = {1, 2};
  SelectionGrid g2;
  g2.K_values = {1, 2, 2, 1};
  g2.alpha_values = {0.05, 0.5, 1.0, 1.0, 0.5};
  FitReport a = fit_estimator("component_lasso", train, val, g1);
  FitReport b = fit_estimator("component_lasso", train, val, g2);
  CHECK((a.beta_hat - b.beta_hat).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(a.params.K == b.params.K);
  CHECK(a.params.alpha == doctest::Approx(b.params.alpha));
  CHECK(a.params.lambda == doctest::Approx(b.params.lambda));
}

TEST_CASE("select_model: holdout scheme matches fit_estimator on the same split") {
  Matrix X = random_matrix(60, 5);
  Vector y = Vector(2.0 * X.col(0) + random_vector(60));
  RawDataset all = raw_from(X, y);
  Split s = split_indices(60, 40, 20, 0, 9);
  SelectionGrid grid;
  grid.K_values = {1, 2};
  FitReport via_select = select_model("lasso", all, grid, Holdout{s});
  FitReport direct =
      fit_estimator("lasso", subset_rows(all, s.train), subset_rows(all, s.validation), grid);
  CHECK(via_select.params.lambda == doctest::Approx(direct.params.lambda));
  CHECK(via_select.params.alpha == doctest::Approx(direct.params.alpha));
}

TEST_CASE("select_model: k-fold runs and refits on all rows") {
  Matrix X = random_matrix(45, 4);
  Vector y = Vector(1.5 * X.col(2) + random_vector(45, 0.5));
  RawDataset all = raw_from(X, y);
  SelectionGrid grid;
  grid.K_values = {1, 2};
  FitReport r = select_model("enet", all, grid, KFold{5, 11});
  CHECK(r.beta_hat.size() == 4);
  CHECK(r.col_means.size() == 4);
  // Refit uses all 45 rows: predictions on the full data are finite and the
  // strongest predictor is kept.
  CHECK(std::abs(r.beta_hat[2]) > 1e-6);
}

TEST_CASE("empty grids are rejected") {
  Matrix X = random_matrix(30, 3);
  Vector y = random_vector(30);
  RawDataset all = raw_from(X, y);
  Split s = split_indices(30, 20, 10, 0, 1);
  SelectionGrid bad;
  bad.alpha_values = {};
  CHECK_THROWS_AS(
      fit_estimator("enet", subset_rows(all, s.train), subset_rows(all, s.validation), bad),
      EmptyGridError);
}

TEST_CASE("predict aligns columns by feature name") {
  Matrix X = random_matrix(50, 3);
  Vector y = Vector(X.col(0) + 2.0 * X.col(1) - X.col(2) + random_vector(50, 0.3));
  RawDataset all = raw_from(X, y);
  all.feature_names = {"a", "b", "c"};
  Split s = split_indices(50, 35, 15, 0, 21);
  SelectionGrid grid;
  FitReport model = fit_estimator("lasso", subset_rows(all, s.train),
                                  subset_rows(all, s.validation), grid);
  Matrix Xnew = random_matrix(10, 3);
  Vector direct = predict(model, Xnew, {"a", "b", "c"});
  Matrix Xperm(10, 3);
  Xperm.col(0) = Xnew.col(2);
  Xperm.col(1) = Xnew.col(0);
  Xperm.col(2) = Xnew.col(1);
  Vector permuted = predict(model, Xperm, {"c", "a", "b"});
  CHECK((direct - permuted).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(predict(model, Xnew, {"a", "b", "zzz"}), MissingColumnError);
  CHECK_THROWS_AS(predict(model, Matrix(random_matrix(4, 2))), DimensionMismatchError);
}

TEST_CASE("default_k_grid shapes") {
  auto small = default_k_grid(8);
  REQUIRE(small.size() == 8);
  CHECK(small.front() == 1);
  CHECK(small.back() == 8);
  // {1} plus 9 log-spaced values up to 50, with rounding duplicates removed.
  auto large = default_k_grid(200);
  CHECK(large == std::vector<int>{1, 2, 4, 6, 9, 14, 21, 32, 50});
}
