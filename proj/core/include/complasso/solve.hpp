#pragma once

#include <vector>

#include "complasso/data.hpp"

namespace complasso {

/// Elastic-net objective: (1/2)||y - X b||^2 + lambda * (alpha ||b||_1
/// + (1-alpha)/2 ||b||_2^2). Half squared error, no 1/n factor.
struct EnetConfig {
  double alpha = 1.0;                // 1 = lasso, 0 = ridge limit
  std::vector<double> lambda_grid;   // strictly descending, positive (0 allowed last)
  double tol = 1e-7;                 // max abs coefficient change per sweep
  int max_iter = 100000;             // sweep cap per lambda
};

struct EnetPath {
  Matrix betas;               // |grid| x p
  std::vector<double> grid;   // the lambda values
  double alpha = 1.0;
  std::vector<int> n_iters;        // sweeps used per lambda
  std::vector<bool> converged;     // false = MaxIterExceeded, best iterate kept

  bool all_converged() const;
};

struct NnlsResult {
  Vector c;             // nonnegative weights
  double kkt_residual;  // max violation of the stationarity conditions
};

struct LstsqResult {
  Vector beta;
  bool singular = false;  // min-norm fallback was used
};

/// Smallest lambda with an all-zero solution: max_j |x_j^T y| / max(alpha, 0.001).
double lambda_max(const Matrix& X, const Vector& y, double alpha);

/// n_values log-spaced lambdas from lmax down to eps * lmax, descending.
std::vector<double> make_lambda_grid(double lmax, int n_values, double eps);

/// Default path grid: 100 values, eps = 1e-3 (1e-2 when p > n).
std::vector<double> default_lambda_grid(const Matrix& X, const Vector& y, double alpha);

/// Cyclical coordinate descent with warm starts along the descending grid and
/// active-set cycling (full sweep, iterate over nonzeros, confirming sweep).
EnetPath enet_path(const Matrix& X, const Vector& y, const EnetConfig& cfg);

/// Solve for a single lambda (a short warm-started path ending at lambda).
Vector enet_fit(const Matrix& X, const Vector& y, double alpha, double lambda);

/// Max KKT stationarity violation of beta for the elastic-net objective.
double enet_kkt_violation(const Matrix& X, const Vector& y, const Vector& beta, double alpha,
                          double lambda);

/// min ||y - A c||^2 s.t. c >= 0, by the Lawson-Hanson active-set method.
/// Columns with norm < 1e-12 get weight exactly 0.
NnlsResult nnls(const Matrix& A, const Vector& y);

/// Unpenalized least squares; min-norm solution with a flag when X^T X is
/// rank deficient.
LstsqResult least_squares(const Matrix& X, const Vector& y);

/// Solves (X^T X + lambda2 I) b = X^T y.
Vector ridge(const Matrix& X, const Vector& y, double lambda2);

}  // namespace complasso
