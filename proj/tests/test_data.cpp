#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "complasso/data.hpp"
#include "complasso/errors.hpp"
#include "doctest.h"

using namespace complasso;
namespace fs = std::filesystem;

namespace {

RawDataset raw_from(const Matrix& X, const Vector& y) {
  RawDataset r;
  r.X = X;
  r.y = y;
  return r;
}

fs::path write_temp_csv(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("standardize: hand-computed column (1,2,3)") {
  Matrix X(3, 1);
  X << 1, 2, 3;
  Vector y(3);
  y << 0, 0, 0;
  Dataset d = standardize(raw_from(X, y));
  // mean 2, scale sqrt((1+0+1)/3) = sqrt(2/3); standardized = ±sqrt(1.5), 0.
  CHECK(d.col_means[0] == doctest::Approx(2.0));
  CHECK(d.col_scales[0] == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(d.X(0, 0) == doctest::Approx(-std::sqrt(1.5)));
  CHECK(d.X(1, 0) == doctest::Approx(0.0));
  CHECK(d.X(2, 0) == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("standardize: constant response centers to zero with y_mean kept") {
  Matrix X(3, 1);
  X << 1, 2, 3;
  Vector y(3);
  y << 5, 5, 5;
  Dataset d = standardize(raw_from(X, y));
  CHECK(d.y_mean == doctest::Approx(5.0));
  CHECK(d.y.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("standardize: constant column raises ConstantColumn") {
  Matrix X(3, 2);
  X << 1, 1, 2, 1, 3, 1;
  Vector y(3);
  y << 1, 2, 3;
  CHECK_THROWS_AS(standardize(raw_from(X, y)), ConstantColumnError);
}

TEST_CASE("standardize invariants and idempotence") {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  Matrix X(40, 6);
  Vector y(40);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 6; ++j) X(i, j) = 3 * nd(gen) + j;
    y[i] = nd(gen) + 2;
  }
  Dataset d = standardize(raw_from(X, y));
  for (int j = 0; j < 6; ++j) {
    CHECK(std::abs(d.X.col(j).mean()) < 1e-10);
    CHECK(std::abs(d.X.col(j).squaredNorm() / 40.0 - 1.0) < 1e-10);
  }
  CHECK(std::abs(d.y.mean()) < 1e-10);

  Dataset dd = standardize(raw_from(d.X, d.y));
  CHECK((dd.X - d.X).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((dd.y - d.y).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("raw-scale prediction equals standardized prediction plus y_mean") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  Matrix X(25, 4);
  Vector y(25), beta(4);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 4; ++j) X(i, j) = 2 * nd(gen) + j;
    y[i] = nd(gen);
  }
  beta << 1.5, -2.0, 0.0, 0.25;
  Dataset d = standardize(raw_from(X, y));
  // beta acts on the standardized scale; the equivalent raw-scale
  // coefficients are beta / scale with intercept y_mean - sum mean_j b_j.
  Vector beta_raw = beta.array() / d.col_scales.array();
  double intercept = d.y_mean - beta_raw.dot(d.col_means);
  Vector pred_std = (d.X * beta).array() + d.y_mean;
  Vector pred_raw = (X * beta_raw).array() + intercept;
  CHECK((pred_std - pred_raw).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("sample_covariance: identical, negated, and orthogonal columns") {
  {
    Matrix X(4, 2);
    X.col(0) << -1, 0, 0, 1;
    X.col(1) = X.col(0);
    Dataset d = standardize(raw_from(X, Vector::Zero(4)));
    Covariance S = sample_covariance(d);
    CHECK(S.S(0, 1) == doctest::Approx(1.0));
  }
  {
    Matrix X(4, 2);
    X.col(0) << -1, 0, 0, 1;
    X.col(1) = -X.col(0);
    Dataset d = standardize(raw_from(X, Vector::Zero(4)));
    Covariance S = sample_covariance(d);
    CHECK(S.S(0, 1) == doctest::Approx(-1.0));
  }
  {
    // Orthogonal centered pair: inner product is 0 by construction.
    Matrix X(4, 2);
    X.col(0) << -1, 1, -1, 1;
    X.col(1) << -1, -1, 1, 1;
    Dataset d = standardize(raw_from(X, Vector::Zero(4)));
    Covariance S = sample_covariance(d);
    CHECK(std::abs(S.S(0, 1)) < 1e-12);
  }
}

TEST_CASE("sample_covariance invariants on random standardized data") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  Matrix X(30, 5);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 5; ++j) X(i, j) = nd(gen);
  Dataset d = standardize(raw_from(X, Vector::Zero(30)));
  Covariance S = sample_covariance(d);
  CHECK((S.S - S.S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  for (int j = 0; j < 5; ++j) CHECK(S.S(j, j) == doctest::Approx(1.0));
  CHECK(S.S.cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(S.S);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("load_csv: header, response extraction, names") {
  fs::path p = write_temp_csv("complasso_t1.csv", "a,b,y\n1,2,3\n4,5,6\n7,8,9\n");
  RawDataset r = load_csv(p.string(), "y");
  CHECK(r.n() == 3);
  CHECK(r.p() == 2);
  REQUIRE(r.feature_names.size() == 2);
  CHECK(r.feature_names[0] == "a");
  CHECK(r.feature_names[1] == "b");
  CHECK(r.y[2] == doctest::Approx(9.0));
  CHECK(r.X(1, 1) == doctest::Approx(5.0));
  fs::remove(p);
}

TEST_CASE("load_csv: non-finite entry is a ParseError") {
  fs::path p = write_temp_csv("complasso_t2.csv", "a,y\n1,2\nNaN,4\n");
  CHECK_THROWS_AS(load_csv(p.string(), "y"), ParseError);
  fs::remove(p);
}

TEST_CASE("load_csv: missing response column") {
  fs::path p = write_temp_csv("complasso_t3.csv", "a,b\n1,2\n3,4\n");
  CHECK_THROWS_AS(load_csv(p.string(), "y"), MissingColumnError);
  fs::remove(p);
}

TEST_CASE("load_csv: ragged row") {
  fs::path p = write_temp_csv("complasso_t4.csv", "a,b,y\n1,2,3\n4,5\n");
  CHECK_THROWS_AS(load_csv(p.string(), "y"), RaggedRowError);
  fs::remove(p);
}

TEST_CASE("split_indices: paper sizes 20/20/200, disjoint and deterministic") {
  Split s = split_indices(240, 20, 20, 200, 123);
  CHECK(s.train.size() == 20);
  CHECK(s.validation.size() == 20);
  CHECK(s.test.size() == 200);
  std::vector<int> all = s.train;
  all.insert(all.end(), s.validation.begin(), s.validation.end());
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  CHECK(all.front() >= 0);
  CHECK(all.back() < 240);

  Split s2 = split_indices(240, 20, 20, 200, 123);
  CHECK(s.train == s2.train);
  CHECK(s.validation == s2.validation);
  CHECK(s.test == s2.test);
}

TEST_CASE("split_indices: all-train edge and bad sizes") {
  Split s = split_indices(10, 10, 0, 0, 5);
  CHECK(s.train.size() == 10);
  CHECK(s.validation.empty());
  CHECK(s.test.empty());
  CHECK_THROWS_AS(split_indices(10, 9, 2, 0, 5), BadFractionsError);
}

TEST_CASE("RawDataset::validate rejects non-finite entries") {
  Matrix X(2, 1);
  X << 1, std::numeric_limits<double>::quiet_NaN();
  Vector y(2);
  y << 1, 2;
  RawDataset r = raw_from(X, y);
  CHECK_THROWS(r.validate());
}
