#include "complasso/simgen.hpp"

#include <cmath>

#include "complasso/errors.hpp"
#include "complasso/rng.hpp"

namespace complasso {

std::string to_string(SimName name) {
  switch (name) {
    case SimName::orthogonal: return "orthogonal";
    case SimName::ex1: return "ex1";
    case SimName::ex2a: return "ex2a";
    case SimName::ex2b: return "ex2b";
    case SimName::ex3: return "ex3";
    case SimName::ex4: return "ex4";
  }
  return "ex1";
}

SimName sim_name_from_string(const std::string& s) {
  if (s == "orthogonal") return SimName::orthogonal;
  if (s == "ex1") return SimName::ex1;
  if (s == "ex2a") return SimName::ex2a;
  if (s == "ex2b") return SimName::ex2b;
  if (s == "ex3") return SimName::ex3;
  if (s == "ex4") return SimName::ex4;
  throw UnknownSpecError(s);
}

SimSpec make_spec(SimName name, std::uint64_t seed) {
  SimSpec spec;
  spec.name = name;
  spec.seed = seed;
  switch (name) {
    case SimName::orthogonal:
      spec.p = 8;
      spec.sigma = 6.0;
      spec.n_train = 20;
      spec.n_val = 20;
      spec.n_test = 200;
      spec.beta_true.resize(8);
      spec.beta_true << 3, 1.5, 0, 0, 2, 3, 0, 0;
      break;
    case SimName::ex1:
      spec.p = 8;
      spec.sigma = 3.0;
      spec.n_train = 20;
      spec.n_val = 20;
      spec.n_test = 200;
      spec.beta_true.resize(8);
      spec.beta_true << 3, 1.5, 0, 0, 2, 0, 0, 0;
      break;
    case SimName::ex2a:
      spec.p = 8;
      spec.sigma = 5.0;
      spec.n_train = 20;
      spec.n_val = 20;
      spec.n_test = 200;
      spec.beta_true.resize(8);
      spec.beta_true << 3, 1.5, 0, 0, 2, 3, 0, 0;
      break;
    case SimName::ex2b:
      spec.p = 8;
      spec.sigma = 5.0;
      spec.n_train = 20;
      spec.n_val = 20;
      spec.n_test = 200;
      spec.beta_true.resize(8);
      spec.beta_true << 3, 1.5, 2, 3, 0, 0, 0, 0;
      break;
    case SimName::ex3:
      spec.p = 40;
      spec.sigma = 15.0;
      spec.n_train = 100;
      spec.n_val = 100;
      spec.n_test = 400;
      spec.beta_true = Vector::Zero(40);
      spec.beta_true.segment(10, 10).setConstant(2.0);
      spec.beta_true.segment(30, 10).setConstant(2.0);
      break;
    case SimName::ex4:
      spec.p = 40;
      spec.sigma = 15.0;
      spec.n_train = 50;
      spec.n_val = 50;
      spec.n_test = 200;
      spec.beta_true = Vector::Zero(40);
      spec.beta_true.head(15).setConstant(3.0);
      break;
  }
  return spec;
}

namespace {

Matrix normal_matrix(Rng& rng, int n, int p) {
  Matrix M(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) M(i, j) = rng.normal();
  }
  return M;
}

/// Rows i.i.d. N(0, Sigma) via Cholesky.
Matrix mvn_rows(Rng& rng, int n, const Matrix& Sigma) {
  const Matrix L = Eigen::LLT<Matrix>(Sigma).matrixL();
  return normal_matrix(rng, n, static_cast<int>(Sigma.rows())) * L.transpose();
}

/// Common-factor block: x_i = Z + eps_i with Var(Z) = var_z, Var(eps) = var_e.
Matrix factor_block(Rng& rng, int n, int width, double var_z, double var_e) {
  Matrix X(n, width);
  const double sz = std::sqrt(var_z), se = std::sqrt(var_e);
  for (int i = 0; i < n; ++i) {
    const double z = sz * rng.normal();
    for (int j = 0; j < width; ++j) X(i, j) = z + se * rng.normal();
  }
  return X;
}

void add_noise_response(Rng& rng, const Matrix& X, const Vector& beta, double sigma, Vector& y) {
  y = X * beta;
  for (int i = 0; i < y.size(); ++i) y[i] += sigma * rng.normal();
}

Partition block_partition(const std::vector<int>& block_sizes) {
  Partition part;
  int id = 0;
  for (int sz : block_sizes) {
    ++id;
    for (int j = 0; j < sz; ++j) part.assignment.push_back(id);
  }
  part.K = id;
  return part;
}

/// One fold of the orthogonal design: two equicorrelated blocks of 4 with the
/// second block residualized against the first so the fold's cross-component
/// sample correlations are exactly zero.
Matrix orthogonal_fold(Rng& rng, int n) {
  // Equicorrelated blocks at correlation 0.8 with marginal variance 1.45.
  const double var = 1.45;
  Matrix Sigma = Matrix::Constant(4, 4, 0.8 * var);
  Sigma.diagonal().setConstant(var);
  Matrix X1 = mvn_rows(rng, n, Sigma);
  Matrix X2 = mvn_rows(rng, n, Sigma);
  X1.rowwise() -= X1.colwise().mean();
  X2.rowwise() -= X2.colwise().mean();
  // Project block 2 out of block 1's column space so the cross-component
  // sample correlations are exactly zero, then restore the marginal scale
  // lost to the projection.
  const Matrix Q = Eigen::HouseholderQR<Matrix>(X1).householderQ() * Matrix::Identity(n, 4);
  X2 -= Q * (Q.transpose() * X2);
  for (int j = 0; j < 4; ++j) {
    const double sd = std::sqrt(X2.col(j).squaredNorm() / n);
    if (sd > 0) X2.col(j) *= std::sqrt(var) / sd;
  }
  Matrix X(n, 8);
  X << X1, X2;
  return X;
}

}  // namespace

SimData generate(const SimSpec& spec) {
  Rng rng(spec.seed);
  SimData out;
  out.beta_true = spec.beta_true;
  const int n = spec.n_train + spec.n_val + spec.n_test;

  switch (spec.name) {
    case SimName::orthogonal: {
      out.raw.X.resize(n, 8);
      out.raw.y.resize(n);
      const int sizes[3] = {spec.n_train, spec.n_val, spec.n_test};
      int row = 0;
      for (int f = 0; f < 3; ++f) {
        const Matrix Xf = orthogonal_fold(rng, sizes[f]);
        Vector yf;
        add_noise_response(rng, Xf, spec.beta_true, spec.sigma, yf);
        out.raw.X.middleRows(row, sizes[f]) = Xf;
        out.raw.y.segment(row, sizes[f]) = yf;
        row += sizes[f];
      }
      out.true_partition = block_partition({4, 4});
      break;
    }
    case SimName::ex1: {
      Matrix Sigma(8, 8);
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) Sigma(i, j) = std::pow(0.5, std::abs(i - j));
      }
      out.raw.X = mvn_rows(rng, n, Sigma);
      add_noise_response(rng, out.raw.X, spec.beta_true, spec.sigma, out.raw.y);
      out.true_partition = block_partition({8});
      break;
    }
    case SimName::ex2a:
    case SimName::ex2b: {
      out.raw.X.resize(n, 8);
      out.raw.X.leftCols(4) = factor_block(rng, n, 4, 2.0, 0.5);
      out.raw.X.rightCols(4) = factor_block(rng, n, 4, 2.0, 0.5);
      add_noise_response(rng, out.raw.X, spec.beta_true, spec.sigma, out.raw.y);
      out.true_partition = block_partition({4, 4});
      break;
    }
    case SimName::ex3: {
      // x_i = Z + eps_i with standard normal Z and eps gives pairwise
      // correlation exactly 0.5.
      out.raw.X = factor_block(rng, n, 40, 1.0, 1.0);
      add_noise_response(rng, out.raw.X, spec.beta_true, spec.sigma, out.raw.y);
      out.true_partition = block_partition({40});
      break;
    }
    case SimName::ex4: {
      out.raw.X.resize(n, 40);
      for (int g = 0; g < 3; ++g) {
        out.raw.X.middleCols(5 * g, 5) = factor_block(rng, n, 5, 1.0, 0.01);
      }
      out.raw.X.rightCols(25) = normal_matrix(rng, n, 25);
      add_noise_response(rng, out.raw.X, spec.beta_true, spec.sigma, out.raw.y);
      std::vector<int> sizes = {5, 5, 5};
      for (int j = 0; j < 25; ++j) sizes.push_back(1);
      out.true_partition = block_partition(sizes);
      break;
    }
  }

  out.split.train.resize(spec.n_train);
  out.split.validation.resize(spec.n_val);
  out.split.test.resize(spec.n_test);
  for (int i = 0; i < spec.n_train; ++i) out.split.train[i] = i;
  for (int i = 0; i < spec.n_val; ++i) out.split.validation[i] = spec.n_train + i;
  for (int i = 0; i < spec.n_test; ++i) out.split.test[i] = spec.n_train + spec.n_val + i;
  return out;
}

double empirical_snr(const SimSpec& spec, int n_reps, std::uint64_t seed) {
  double total = 0.0;
  for (int r = 0; r < n_reps; ++r) {
    SimSpec s = spec;
    s.seed = seed + static_cast<std::uint64_t>(r);
    const SimData data = generate(s);
    const Vector signal = data.raw.X * data.beta_true;
    const double mean = signal.mean();
    const double var = (signal.array() - mean).square().sum() / signal.size();
    total += var / (spec.sigma * spec.sigma);
  }
  return total / n_reps;
}

SmwResult smw_check(const std::vector<Matrix>& A_blocks, double rho) {
  int p = 0;
  for (const auto& b : A_blocks) {
    if (b.rows() != b.cols()) throw SingularAError();
    p += static_cast<int>(b.rows());
  }
  Matrix A = Matrix::Zero(p, p);
  int off = 0;
  for (const auto& b : A_blocks) {
    A.block(off, off, b.rows(), b.cols()) = b;
    off += static_cast<int>(b.rows());
  }
  Eigen::FullPivLU<Matrix> lu(A);
  if (!lu.isInvertible()) throw SingularAError();
  const Matrix Ainv = lu.inverse();

  const Vector e = Vector::Ones(p);
  const Vector Ainv_e = Ainv * e;
  const double denom = 1.0 + rho * e.dot(Ainv_e);
  const Matrix bias = (rho / denom) * (Ainv_e * Ainv_e.transpose());

  const Matrix S = A + rho * e * e.transpose();
  Eigen::FullPivLU<Matrix> lus(S);
  if (!lus.isInvertible()) throw SingularAError();
  const Matrix Sinv = lus.inverse();

  SmwResult res;
  res.identity_residual = (Sinv - (Ainv - bias)).cwiseAbs().maxCoeff();
  res.bias_norm = bias.cwiseAbs().maxCoeff();
  return res;
}

}  // namespace complasso
