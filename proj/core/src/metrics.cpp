#include "complasso/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "complasso/errors.hpp"

namespace complasso {

double beta_mse(const Vector& beta_true, const Vector& beta_hat, const Covariance& S) {
  if (beta_true.size() != beta_hat.size() || S.p() != beta_true.size())
    throw DimensionMismatchError("beta_mse: dimensions do not match");
  const Vector d = beta_true - beta_hat;
  return d.dot(S.S * d);
}

double test_mse(const Vector& y, const Vector& y_hat) {
  if (y.size() == 0) throw EmptyTestSetError();
  if (y.size() != y_hat.size()) throw DimensionMismatchError("test_mse: length mismatch");
  return (y - y_hat).squaredNorm() / static_cast<double>(y.size());
}

std::pair<double, double> support_rates(const Vector& beta_true, const Vector& beta_hat) {
  if (beta_true.size() != beta_hat.size())
    throw DimensionMismatchError("support_rates: length mismatch");
  int selected = 0, unselected = 0, false_pos = 0, false_neg = 0;
  for (int j = 0; j < beta_true.size(); ++j) {
    const bool truth = std::abs(beta_true[j]) > kSupportEps;
    const bool est = std::abs(beta_hat[j]) > kSupportEps;
    if (est) {
      ++selected;
      if (!truth) ++false_pos;
    } else {
      ++unselected;
      if (truth) ++false_neg;
    }
  }
  const double fp = selected > 0 ? static_cast<double>(false_pos) / selected : 0.0;
  const double fn = unselected > 0 ? static_cast<double>(false_neg) / unselected : 0.0;
  return {fp, fn};
}

double irrepresentability(const Matrix& X, const IndexVec& support, const Vector& sign_vec) {
  const int s = static_cast<int>(support.size());
  if (sign_vec.size() != s) throw DimensionMismatchError("sign_vec does not match support size");
  const int p = static_cast<int>(X.cols());
  std::vector<bool> in_s(p, false);
  for (int j : support) in_s[j] = true;

  Matrix Xs(X.rows(), s);
  for (int a = 0; a < s; ++a) Xs.col(a) = X.col(support[a]);
  Matrix Xc(X.rows(), p - s);
  int b = 0;
  for (int j = 0; j < p; ++j) {
    if (!in_s[j]) Xc.col(b++) = X.col(j);
  }
  if (b == 0) return 0.0;

  const Matrix G = Xs.transpose() * Xs;
  Eigen::FullPivLU<Matrix> lu(G);
  if (!lu.isInvertible()) throw SingularGramError();
  const Vector v = Xc.transpose() * Xs * lu.solve(sign_vec);
  return v.cwiseAbs().maxCoeff();
}

}  // namespace complasso
