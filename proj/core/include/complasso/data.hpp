#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace complasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexVec = std::vector<int>;

/// Raw design matrix and response, before any standardization.
struct RawDataset {
  Matrix X;  // n x p
  Vector y;  // length n
  std::vector<std::string> feature_names;  // empty or length p

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }

  /// Checks n >= 2, p >= 1, finiteness and name count. Throws on violation.
  void validate() const;
};

/// Standardized data: columns of X have mean 0 and (1/n) sum x^2 = 1,
/// y is centered. The transform is recorded so predictions map back to the
/// raw scale.
struct Dataset {
  Matrix X;
  Vector y;
  Vector col_means;
  Vector col_scales;  // sqrt((1/n) sum (x - mean)^2), strictly positive
  double y_mean = 0.0;
  std::vector<std::string> feature_names;

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
};

/// Sample covariance S = X^T X / n of a standardized dataset; with the 1/n
/// scaling convention this is the correlation matrix.
struct Covariance {
  Matrix S;

  int p() const { return static_cast<int>(S.rows()); }
};

/// Disjoint train/validation/test row indices.
struct Split {
  IndexVec train;
  IndexVec validation;
  IndexVec test;
};

/// Center and scale using statistics of `raw` itself.
Dataset standardize(const RawDataset& raw);

/// Center and scale using externally supplied statistics (e.g. computed on the
/// training rows only).
Dataset standardize_with(const RawDataset& raw, const Vector& col_means, const Vector& col_scales,
                         double y_mean);

/// Column means and 1/n-convention scales of a raw matrix.
void standardization_stats(const Matrix& X, Vector& col_means, Vector& col_scales);

Covariance sample_covariance(const Dataset& d);

/// Parse a numeric CSV; the named response column becomes y, the rest X.
/// '.' decimal, optional single header row, no quoting.
RawDataset load_csv(const std::string& path, const std::string& response_column);

/// Deterministic seeded split into disjoint index sets of the given sizes.
Split split_indices(int n, int n_train, int n_val, int n_test, std::uint64_t seed);

/// Fraction-based variant; counts are floor(n * fraction).
Split split_fractions(int n, double f_train, double f_val, double f_test, std::uint64_t seed);

RawDataset subset_rows(const RawDataset& raw, const IndexVec& rows);

}  // namespace complasso
