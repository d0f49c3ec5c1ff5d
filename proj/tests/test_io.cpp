#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "complasso/bench.hpp"
#include "complasso/json_io.hpp"
#include "doctest.h"

using namespace complasso;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("format_double carries 17 significant digits round-trip") {
  for (double v : {1.0 / 3.0, 0.1, -2.5e-17, 123456.789, 0.0}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("partition JSON round-trip") {
  Partition p;
  p.assignment = {1, 2, 2, 1, 3};
  p.K = 3;
  p.tau = 0.45;
  Json j = partition_to_json(p);
  CHECK(j["K"] == 3);
  Partition q = partition_from_json(j);
  CHECK(q.assignment == p.assignment);
  CHECK(q.K == p.K);
  REQUIRE(q.tau.has_value());
  CHECK(*q.tau == doctest::Approx(0.45));

  p.tau.reset();
  Partition r = partition_from_json(partition_to_json(p));
  CHECK(!r.tau.has_value());
}

TEST_CASE("fit report JSON round-trip preserves every field") {
  FitReport rep;
  rep.estimator = "component_lasso";
  rep.beta_hat = Vector(3);
  rep.beta_hat << 0.5, 0.0, -1.25;
  rep.validation_mse = 3.75;
  rep.params.K = 2;
  rep.params.alpha = 0.5;
  rep.params.lambda = 1.0 / 3.0;
  rep.params.tau = 0.6;
  rep.n_nonzero = 2;
  rep.singular_flag = true;
  rep.col_means = Vector(3);
  rep.col_means << 1, 2, 3;
  rep.col_scales = Vector(3);
  rep.col_scales << 0.5, 1.0, 2.0;
  rep.y_mean = -0.25;
  rep.feature_names = {"a", "b", "c"};
  Partition part;
  part.assignment = {1, 1, 2};
  part.K = 2;
  rep.partition = part;
  rep.nnls_weights = Vector(2);
  rep.nnls_weights << 0.9, 0.0;

  FitReport back = fit_report_from_json(fit_report_to_json(rep));
  CHECK(back.estimator == rep.estimator);
  CHECK((back.beta_hat - rep.beta_hat).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(back.validation_mse == rep.validation_mse);
  CHECK(back.params.K == 2);
  CHECK(back.params.alpha == rep.params.alpha);
  CHECK(back.params.lambda == rep.params.lambda);
  REQUIRE(back.params.tau.has_value());
  CHECK(*back.params.tau == doctest::Approx(0.6));
  CHECK(back.n_nonzero == 2);
  CHECK(back.singular_flag);
  CHECK((back.col_means - rep.col_means).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((back.col_scales - rep.col_scales).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(back.y_mean == rep.y_mean);
  CHECK(back.feature_names == rep.feature_names);
  REQUIRE(back.partition.has_value());
  CHECK(back.partition->assignment == part.assignment);
  CHECK((back.nnls_weights - rep.nnls_weights).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // Predictions survive the round-trip bit-for-bit.
  Matrix Xnew(4, 3);
  Xnew << 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2;
  CHECK((predict(back, Xnew) - predict(rep, Xnew)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("save_json / load_json round-trip on disk") {
  fs::path p = fs::temp_directory_path() / "complasso_io1.json";
  Json j = {{"x", 1.5}, {"name", "t"}, {"v", {1, 2, 3}}};
  save_json(j, p.string());
  Json back = load_json(p.string());
  CHECK(back == j);
  fs::remove(p);
  CHECK_THROWS(load_json(p.string()));
}

TEST_CASE("dataset_manifest fields") {
  Matrix X(4, 2);
  X << 1, 10, 2, 20, 3, 30, 4, 40;
  Vector y(4);
  y << 1, 2, 3, 4;
  RawDataset raw;
  raw.X = X;
  raw.y = y;
  Dataset d = standardize(raw);
  Json m = dataset_manifest(d);
  CHECK(m["n"] == 4);
  CHECK(m["p"] == 2);
  CHECK(m["y_mean"].get<double>() == doctest::Approx(2.5));
  CHECK(m["col_means"].size() == 2);
  CHECK(m["col_scales"].size() == 2);
}

TEST_CASE("write_path_csv: long format, one row per (lambda, feature)") {
  Matrix X(10, 2);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 2; ++j) X(i, j) = nd(gen);
  Vector y = X.col(0);
  EnetConfig cfg;
  cfg.alpha = 1.0;
  cfg.lambda_grid = make_lambda_grid(lambda_max(X, y, 1.0), 5, 1e-3);
  EnetPath path = enet_path(X, y, cfg);

  fs::path p = fs::temp_directory_path() / "complasso_io2.csv";
  write_path_csv(p.string(), {{"lasso", &path}}, {"f1", "f2"});
  std::string body = slurp(p);
  CHECK(count_lines(body) == 1 + 5 * 2);  // header + |grid| * p
  CHECK(body.rfind("method,lambda,feature,coefficient\n", 0) == 0);
  CHECK(body.find("lasso") != std::string::npos);
  CHECK(body.find("f2") != std::string::npos);
  fs::remove(p);
}

TEST_CASE("write_dendrogram_csv") {
  Matrix S = Matrix::Identity(3, 3);
  S(0, 1) = S(1, 0) = 0.9;
  S(1, 2) = S(2, 1) = 0.2;
  Covariance cov;
  cov.S = S;
  Dendrogram dend = build_dendrogram(cov, Linkage::average);
  fs::path p = fs::temp_directory_path() / "complasso_io3.csv";
  write_dendrogram_csv(p.string(), dend);
  std::string body = slurp(p);
  CHECK(count_lines(body) == 1 + 2);  // header + p-1 merges
  CHECK(body.rfind("a,b,height\n", 0) == 0);
  fs::remove(p);
}

TEST_CASE("results and summary CSV schemas") {
  bench::SuiteResult res;
  res.suite = SimName::ex1;
  for (int r = 0; r < 3; ++r) {
    bench::ReplicateResult row;
    row.estimator = "lasso";
    row.replicate = r;
    row.beta_mse = 1.0 + r;
    row.fp = 0.25;
    row.fn = 0.0;
    res.rows.push_back(row);
  }
  fs::path p1 = fs::temp_directory_path() / "complasso_io4.csv";
  write_results_csv(p1.string(), res);
  std::string body = slurp(p1);
  CHECK(count_lines(body) == 1 + 3);
  CHECK(body.rfind("estimator,replicate,beta_mse,test_mse,fp,fn,K,alpha,lambda", 0) == 0);
  fs::remove(p1);

  auto rows = bench::summarize(res, 1, 200);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].estimator == "lasso");
  CHECK(rows[0].median_mse == doctest::Approx(2.0));

  fs::path p2 = fs::temp_directory_path() / "complasso_io5.csv";
  write_summary_csv(p2.string(), rows);
  std::string body2 = slurp(p2);
  CHECK(body2.rfind("estimator,median_mse,se_mse,median_fp,se_fp,median_fn,se_fn", 0) == 0);
  CHECK(count_lines(body2) == 2);
  fs::remove(p2);

  std::string table = render_summary_table(rows);
  CHECK(table.find("lasso") != std::string::npos);

  // Single replicate: SEs are written as NA.
  res.rows.resize(1);
  auto one = bench::summarize(res, 1, 200);
  fs::path p3 = fs::temp_directory_path() / "complasso_io6.csv";
  write_summary_csv(p3.string(), one);
  CHECK(slurp(p3).find("NA") != std::string::npos);
  fs::remove(p3);
}

TEST_CASE("bench helpers: median and bootstrap SE") {
  CHECK(bench::median({3, 1, 2}) == doctest::Approx(2.0));
  CHECK(bench::median({4, 1, 2, 3}) == doctest::Approx(2.5));
  std::vector<double> vals = {1, 2, 3, 4, 5, 6, 7, 8};
  double a = bench::bootstrap_median_se(vals, 500, 9);
  double b = bench::bootstrap_median_se(vals, 500, 9);
  CHECK(a == doctest::Approx(b));  // seeded, deterministic
  CHECK(a > 0.0);
}

TEST_CASE("noc histogram buckets component_lasso rows by selected K") {
  bench::SuiteResult res;
  res.suite = SimName::ex2b;
  auto add = [&](const std::string& est, int K, double mis) {
    bench::ReplicateResult row;
    row.estimator = est;
    row.K = K;
    row.misclass = mis;
    res.rows.push_back(row);
  };
  add("component_lasso", 2, 0.0);
  add("component_lasso", 2, 0.5);
  add("component_lasso", 5, 1.0);
  add("lasso", 3, -1.0);  // ignored
  auto buckets = bench::noc_histogram(res);
  REQUIRE(buckets.size() == 2);
  CHECK(buckets[0].K == 2);
  CHECK(buckets[0].count == 2);
  CHECK(buckets[0].mean_misclass == doctest::Approx(0.25));
  CHECK(buckets[1].K == 5);
  CHECK(buckets[1].count == 1);
}
