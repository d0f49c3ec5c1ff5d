#pragma once

#include <utility>

#include "complasso/data.hpp"

namespace complasso {

struct EvalResult {
  double beta_mse = 0.0;  // (beta - beta_hat)^T S (beta - beta_hat)
  double test_mse = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
};

/// Coefficients with |b| above this count as selected. Lasso zeros are exact;
/// this only guards round-off.
constexpr double kSupportEps = 1e-8;

/// Quadratic form (beta - beta_hat)^T S (beta - beta_hat).
double beta_mse(const Vector& beta_true, const Vector& beta_hat, const Covariance& S);

/// Mean squared prediction error sum (y_i - yhat_i)^2 / n.
double test_mse(const Vector& y, const Vector& y_hat);

/// (fp, fn): fp = #{true zero, selected} / #selected (0 if nothing selected);
/// fn = #{true nonzero, unselected} / #unselected (0 if everything selected).
std::pair<double, double> support_rates(const Vector& beta_true, const Vector& beta_hat);

/// || (X_S^T X_S)^{-1} X_S^T X_{S^c} sign_vec ||_inf. The caller compares the
/// value against 1.
double irrepresentability(const Matrix& X, const IndexVec& support, const Vector& sign_vec);

}  // namespace complasso
