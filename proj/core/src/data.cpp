#include "complasso/data.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "complasso/errors.hpp"
#include "complasso/rng.hpp"

namespace complasso {

void RawDataset::validate() const {
  if (n() < 2) throw Error("need at least 2 observations");
  if (p() < 1) throw Error("need at least 1 predictor");
  if (y.size() != X.rows()) throw DimensionMismatchError("y length does not match rows of X");
  if (!X.allFinite() || !y.allFinite()) throw Error("non-finite entry in dataset");
  if (!feature_names.empty() && static_cast<int>(feature_names.size()) != p())
    throw DimensionMismatchError("feature_names length does not match columns of X");
}

void standardization_stats(const Matrix& X, Vector& col_means, Vector& col_scales) {
  const auto n = static_cast<double>(X.rows());
  col_means = X.colwise().mean();
  col_scales.resize(X.cols());
  for (int j = 0; j < X.cols(); ++j) {
    const double ss = (X.col(j).array() - col_means[j]).square().sum() / n;
    col_scales[j] = std::sqrt(ss);
  }
}

Dataset standardize(const RawDataset& raw) {
  raw.validate();
  Vector means, scales;
  standardization_stats(raw.X, means, scales);
  for (int j = 0; j < raw.p(); ++j) {
    if (scales[j] <= 0.0) throw ConstantColumnError(j);
  }
  return standardize_with(raw, means, scales, raw.y.mean());
}

Dataset standardize_with(const RawDataset& raw, const Vector& col_means, const Vector& col_scales,
                         double y_mean) {
  raw.validate();
  if (col_means.size() != raw.p() || col_scales.size() != raw.p())
    throw DimensionMismatchError("standardization statistics do not match p");
  for (int j = 0; j < raw.p(); ++j) {
    if (!(col_scales[j] > 0.0)) throw ConstantColumnError(j);
  }
  Dataset d;
  d.X = (raw.X.rowwise() - col_means.transpose()).array().rowwise() /
        col_scales.transpose().array();
  d.y = raw.y.array() - y_mean;
  d.col_means = col_means;
  d.col_scales = col_scales;
  d.y_mean = y_mean;
  d.feature_names = raw.feature_names;
  return d;
}

Covariance sample_covariance(const Dataset& d) {
  Covariance c;
  c.S = d.X.transpose() * d.X / static_cast<double>(d.n());
  c.S = 0.5 * (c.S + c.S.transpose().eval());  // exact symmetry
  return c;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  return std::isfinite(out);
}

}  // namespace

RawDataset load_csv(const std::string& path, const std::string& response_column) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);

  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_fields(line));
  }
  if (rows.empty()) throw Error("empty CSV: " + path);

  const int n_cols = static_cast<int>(rows[0].size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != n_cols) throw RaggedRowError(static_cast<int>(r));
  }

  // Header detection: a first row whose fields do not all parse as numbers.
  std::vector<std::string> header;
  bool has_header = false;
  for (const auto& f : rows[0]) {
    double tmp;
    if (!parse_double(f, tmp)) {
      has_header = true;
      break;
    }
  }
  int response_idx = -1;
  if (has_header) {
    header = rows[0];
    for (auto& h : header) {
      while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
      while (!h.empty() && h.front() == ' ') h.erase(h.begin());
    }
    auto it = std::find(header.begin(), header.end(), response_column);
    if (it == header.end()) throw MissingColumnError(response_column);
    response_idx = static_cast<int>(it - header.begin());
  } else {
    // Without a header the response may be addressed by 0-based position.
    char* end = nullptr;
    const long idx = std::strtol(response_column.c_str(), &end, 10);
    if (end == response_column.c_str() || *end != '\0' || idx < 0 || idx >= n_cols)
      throw MissingColumnError(response_column);
    response_idx = static_cast<int>(idx);
  }

  const int first_data_row = has_header ? 1 : 0;
  const int n = static_cast<int>(rows.size()) - first_data_row;
  const int p = n_cols - 1;
  if (n < 1) throw Error("CSV has no data rows");
  if (p < 1) throw Error("CSV has no predictor columns");

  RawDataset raw;
  raw.X.resize(n, p);
  raw.y.resize(n);
  for (int r = 0; r < n; ++r) {
    const auto& fields = rows[r + first_data_row];
    int xj = 0;
    for (int c = 0; c < n_cols; ++c) {
      double v;
      if (!parse_double(fields[c], v)) throw ParseError(r, c);
      if (c == response_idx) {
        raw.y[r] = v;
      } else {
        raw.X(r, xj++) = v;
      }
    }
  }
  if (has_header) {
    for (int c = 0; c < n_cols; ++c) {
      if (c != response_idx) raw.feature_names.push_back(header[c]);
    }
  }
  return raw;
}

Split split_indices(int n, int n_train, int n_val, int n_test, std::uint64_t seed) {
  if (n_train < 0 || n_val < 0 || n_test < 0)
    throw BadFractionsError("split sizes must be nonnegative");
  if (n_train + n_val + n_test > n)
    throw BadFractionsError("split sizes sum to more than n = " + std::to_string(n));

  IndexVec order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  Split s;
  s.train.assign(order.begin(), order.begin() + n_train);
  s.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  s.test.assign(order.begin() + n_train + n_val, order.begin() + n_train + n_val + n_test);
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Split split_fractions(int n, double f_train, double f_val, double f_test, std::uint64_t seed) {
  if (f_train < 0 || f_val < 0 || f_test < 0 || f_train + f_val + f_test > 1.0 + 1e-12)
    throw BadFractionsError("fractions must be nonnegative and sum to at most 1");
  const int n_train = static_cast<int>(std::floor(n * f_train));
  const int n_val = static_cast<int>(std::floor(n * f_val));
  int n_test = static_cast<int>(std::floor(n * f_test));
  n_test = std::min(n_test, n - n_train - n_val);
  return split_indices(n, n_train, n_val, n_test, seed);
}

RawDataset subset_rows(const RawDataset& raw, const IndexVec& rows) {
  RawDataset out;
  out.X.resize(static_cast<int>(rows.size()), raw.p());
  out.y.resize(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.X.row(static_cast<int>(i)) = raw.X.row(rows[i]);
    out.y[static_cast<int>(i)] = raw.y[rows[i]];
  }
  out.feature_names = raw.feature_names;
  return out;
}

}  // namespace complasso
