#include "complasso/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "complasso/errors.hpp"

namespace complasso {

namespace {

constexpr double kZeroColumnNorm = 1e-12;

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

bool EnetPath::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

double lambda_max(const Matrix& X, const Vector& y, double alpha) {
  const double denom = std::max(alpha, 0.001);
  return (X.transpose() * y).cwiseAbs().maxCoeff() / denom;
}

std::vector<double> make_lambda_grid(double lmax, int n_values, double eps) {
  if (lmax <= 0.0) return {0.0};
  std::vector<double> grid(n_values);
  const double log_max = std::log(lmax);
  const double log_min = std::log(eps * lmax);
  for (int i = 0; i < n_values; ++i) {
    const double t = (n_values == 1) ? 0.0 : static_cast<double>(i) / (n_values - 1);
    grid[i] = std::exp(log_max + t * (log_min - log_max));
  }
  return grid;
}

std::vector<double> default_lambda_grid(const Matrix& X, const Vector& y, double alpha) {
  const double eps = (X.cols() > X.rows()) ? 1e-2 : 1e-3;
  return make_lambda_grid(lambda_max(X, y, alpha), 100, eps);
}

namespace {

/// One coordinate-descent sweep over the coordinates in `order`.
/// Returns the max absolute coefficient change.
double cd_sweep(const Matrix& X, const Vector& col_sq, Vector& beta, Vector& resid,
                double l1, double l2, const std::vector<int>& order) {
  double max_change = 0.0;
  for (int j : order) {
    const double cs = col_sq[j];
    const double old = beta[j];
    if (cs < kZeroColumnNorm) {
      if (old != 0.0) {
        resid += X.col(j) * old;
        beta[j] = 0.0;
        max_change = std::max(max_change, std::abs(old));
      }
      continue;
    }
    const double z = X.col(j).dot(resid) + cs * old;
    const double next = soft_threshold(z, l1) / (cs + l2);
    const double delta = next - old;
    if (delta != 0.0) {
      resid -= X.col(j) * delta;
      beta[j] = next;
      max_change = std::max(max_change, std::abs(delta));
    }
  }
  return max_change;
}

}  // namespace

EnetPath enet_path(const Matrix& X, const Vector& y, const EnetConfig& cfg) {
  const int p = static_cast<int>(X.cols());
  const int L = static_cast<int>(cfg.lambda_grid.size());
  if (L == 0) throw Error("empty lambda grid");
  if (cfg.tol <= 0.0) throw Error("tol must be positive");
  for (int i = 1; i < L; ++i) {
    if (!(cfg.lambda_grid[i] < cfg.lambda_grid[i - 1]))
      throw Error("lambda grid must be strictly descending");
  }

  EnetPath path;
  path.grid = cfg.lambda_grid;
  path.alpha = cfg.alpha;
  path.betas.setZero(L, p);
  path.n_iters.assign(L, 0);
  path.converged.assign(L, true);

  const Vector col_sq = X.colwise().squaredNorm();
  std::vector<int> all(p);
  for (int j = 0; j < p; ++j) all[j] = j;

  Vector beta = Vector::Zero(p);
  Vector resid = y;
  for (int li = 0; li < L; ++li) {
    const double lam = cfg.lambda_grid[li];
    const double l1 = lam * cfg.alpha;
    const double l2 = lam * (1.0 - cfg.alpha);
    int iters = 0;
    bool done = false;
    while (!done && iters < cfg.max_iter) {
      const double full_change = cd_sweep(X, col_sq, beta, resid, l1, l2, all);
      ++iters;
      if (full_change < cfg.tol) {
        done = true;
        break;
      }
      // Cycle over the active set until it stabilizes, then confirm with a
      // full sweep on the next outer pass.
      std::vector<int> active;
      for (int j = 0; j < p; ++j) {
        if (beta[j] != 0.0) active.push_back(j);
      }
      while (iters < cfg.max_iter) {
        const double change = cd_sweep(X, col_sq, beta, resid, l1, l2, active);
        ++iters;
        if (change < cfg.tol) break;
      }
    }
    path.n_iters[li] = iters;
    path.converged[li] = done;
    path.betas.row(li) = beta.transpose();
  }
  return path;
}

Vector enet_fit(const Matrix& X, const Vector& y, double alpha, double lambda) {
  const double lmax = lambda_max(X, y, alpha);
  EnetConfig cfg;
  cfg.alpha = alpha;
  if (lmax <= 0.0) {
    cfg.lambda_grid = {std::max(lambda, 0.0)};
  } else if (lambda >= lmax) {
    cfg.lambda_grid = {lambda};
  } else if (lambda <= 0.0) {
    cfg.lambda_grid = make_lambda_grid(lmax, 20, 1e-4);
    cfg.lambda_grid.push_back(0.0);
  } else {
    // Short warm-start path from lmax down to the requested lambda. When the
    // ratio is close to 1 adjacent log-spaced values can round to the same
    // double, so keep only the strictly decreasing entries.
    std::vector<double> g = make_lambda_grid(lmax, 20, lambda / lmax);
    g.back() = lambda;
    cfg.lambda_grid.clear();
    for (double v : g) {
      if (cfg.lambda_grid.empty() || v < cfg.lambda_grid.back()) cfg.lambda_grid.push_back(v);
    }
  }
  const EnetPath path = enet_path(X, y, cfg);
  return path.betas.row(path.betas.rows() - 1).transpose();
}

double enet_kkt_violation(const Matrix& X, const Vector& y, const Vector& beta, double alpha,
                          double lambda) {
  const Vector g = X.transpose() * (y - X * beta);
  double worst = 0.0;
  for (int j = 0; j < beta.size(); ++j) {
    double v;
    if (beta[j] != 0.0) {
      const double sign = beta[j] > 0.0 ? 1.0 : -1.0;
      v = std::abs(g[j] - lambda * alpha * sign - lambda * (1.0 - alpha) * beta[j]);
    } else {
      v = std::max(0.0, std::abs(g[j]) - lambda * alpha);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

NnlsResult nnls(const Matrix& A, const Vector& y) {
  const int K = static_cast<int>(A.cols());
  const Matrix AtA = A.transpose() * A;
  const Vector Aty = A.transpose() * y;
  const double tol = 1e-10 * (1.0 + Aty.cwiseAbs().maxCoeff());

  std::vector<bool> usable(K);
  for (int k = 0; k < K; ++k) usable[k] = A.col(k).norm() >= kZeroColumnNorm;

  Vector c = Vector::Zero(K);
  std::vector<bool> passive(K, false);
  Vector w = Aty;  // -gradient/... w = A^T(y - Ac)

  auto solve_passive = [&](Vector& z) {
    std::vector<int> idx;
    for (int k = 0; k < K; ++k) {
      if (passive[k]) idx.push_back(k);
    }
    const int m = static_cast<int>(idx.size());
    Matrix G(m, m);
    Vector b(m);
    for (int a = 0; a < m; ++a) {
      b[a] = Aty[idx[a]];
      for (int bb = 0; bb < m; ++bb) G(a, bb) = AtA(idx[a], idx[bb]);
    }
    const Vector sol = G.ldlt().solve(b);
    z.setZero(K);
    for (int a = 0; a < m; ++a) z[idx[a]] = sol[a];
  };

  const int max_outer = 3 * K + 30;
  for (int outer = 0; outer < max_outer; ++outer) {
    // Most violating inactive coordinate.
    int best = -1;
    double best_w = tol;
    for (int k = 0; k < K; ++k) {
      if (!passive[k] && usable[k] && w[k] > best_w) {
        best_w = w[k];
        best = k;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (;;) {
      Vector z;
      solve_passive(z);
      bool feasible = true;
      for (int k = 0; k < K; ++k) {
        if (passive[k] && z[k] <= 0.0) feasible = false;
      }
      if (feasible) {
        c = z;
        break;
      }
      double step = 1.0;
      for (int k = 0; k < K; ++k) {
        if (passive[k] && z[k] <= 0.0) step = std::min(step, c[k] / (c[k] - z[k]));
      }
      c += step * (z - c);
      for (int k = 0; k < K; ++k) {
        if (passive[k] && c[k] <= 1e-14) {
          c[k] = 0.0;
          passive[k] = false;
        }
      }
    }
    w = Aty - AtA * c;
  }

  double kkt = 0.0;
  for (int k = 0; k < K; ++k) {
    if (!usable[k]) continue;
    if (c[k] > 0.0) {
      kkt = std::max(kkt, std::abs(w[k]));
    } else {
      kkt = std::max(kkt, std::max(0.0, w[k]));
    }
  }
  NnlsResult res;
  res.c = c;
  res.kkt_residual = kkt;
  return res;
}

LstsqResult least_squares(const Matrix& X, const Vector& y) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(X);
  LstsqResult res;
  res.beta = cod.solve(y);
  res.singular = cod.rank() < X.cols();
  return res;
}

Vector ridge(const Matrix& X, const Vector& y, double lambda2) {
  Matrix G = X.transpose() * X;
  G.diagonal().array() += lambda2;
  return G.ldlt().solve(X.transpose() * y);
}

}  // namespace complasso
