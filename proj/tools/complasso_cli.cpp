#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "complasso/bench.hpp"
#include "complasso/errors.hpp"
#include "complasso/json_io.hpp"
#include "complasso/pipeline.hpp"
#include "complasso/simgen.hpp"

namespace fs = std::filesystem;
using namespace complasso;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const fs::path& dir, const std::string& command, std::uint64_t seed,
                    const std::vector<std::string>& args) {
  Json j{{"version", kVersion}, {"command", command}, {"seed", seed}, {"args", args}};
  save_json(j, (dir / "manifest.json").string());
}

std::vector<int> parse_k_grid(const std::string& s) {
  std::vector<int> ks;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(s.substr(0, dots));
    const int hi = std::stoi(s.substr(dots + 2));
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
  return ks;
}

void write_csv_matrix(const fs::path& path, const Matrix& M,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  if (!header.empty()) out << "\n";
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) out << (j ? "," : "") << format_double(M(i, j));
    out << "\n";
  }
}

Json split_to_json(const Split& s) {
  return Json{{"train", s.train}, {"validation", s.validation}, {"test", s.test}};
}

struct CommonFitFlags {
  std::string estimator = "component_lasso";
  std::string response = "y";
  std::string alpha_grid = "0.05,0.5,1.0";
  std::string k_grid;
  std::string linkage = "average";
  double holdout = 0.0;
  int folds = 0;
  std::uint64_t seed = 42;
  double lambda_eps = 0.0;
  std::string out_dir = ".";
};

SelectionGrid make_grid(const CommonFitFlags& f) {
  SelectionGrid grid;
  grid.alpha_values.clear();
  std::stringstream ss(f.alpha_grid);
  std::string tok;
  while (std::getline(ss, tok, ',')) grid.alpha_values.push_back(std::stod(tok));
  if (!f.k_grid.empty()) grid.K_values = parse_k_grid(f.k_grid);
  grid.linkage = linkage_from_string(f.linkage);
  if (f.lambda_eps > 0.0) grid.lambda_eps = f.lambda_eps;
  return grid;
}

int cmd_fit(const CommonFitFlags& f, const std::string& data_path,
            const std::vector<std::string>& argv) {
  const RawDataset raw = load_csv(data_path, f.response);
  const SelectionGrid grid = make_grid(f);

  Scheme scheme = KFold{5, f.seed};
  if (f.folds > 0) {
    scheme = KFold{f.folds, f.seed};
  } else {
    const double frac = f.holdout > 0.0 ? f.holdout : 0.25;
    scheme = Holdout{split_fractions(raw.n(), 1.0 - frac, frac, 0.0, f.seed)};
  }
  const FitReport report = select_model(f.estimator, raw, grid, scheme);

  fs::create_directories(f.out_dir);
  save_json(fit_report_to_json(report), (fs::path(f.out_dir) / "model.json").string());
  Json summary{{"estimator", report.estimator},
               {"validation_mse", report.validation_mse},
               {"n_nonzero", report.n_nonzero},
               {"K", report.params.K},
               {"alpha", report.params.alpha},
               {"lambda", report.params.lambda},
               {"singular_flag", report.singular_flag}};
  save_json(summary, (fs::path(f.out_dir) / "report.json").string());
  write_manifest(f.out_dir, "fit", f.seed, argv);
  std::cout << "selected: K=" << report.params.K << " alpha=" << report.params.alpha
            << " lambda=" << report.params.lambda << " n_nonzero=" << report.n_nonzero
            << " validation_mse=" << report.validation_mse << "\n";
  return 0;
}

int cmd_paths(const CommonFitFlags& f, const std::string& data_path, double alpha, int k,
              const std::vector<std::string>& argv) {
  const RawDataset raw = load_csv(data_path, f.response);
  const Dataset d = standardize(raw);

  const std::vector<double> grid = default_lambda_grid(d.X, d.y, alpha);

  EnetConfig cfg;
  cfg.alpha = alpha;
  cfg.lambda_grid = grid;
  const EnetPath naive = enet_path(d.X, d.y, cfg);
  EnetPath rescaled = naive;
  for (int li = 0; li < static_cast<int>(grid.size()); ++li) {
    const Vector b = naive.betas.row(li).transpose();
    const Vector y_hat = d.X * b;
    const double denom = y_hat.squaredNorm();
    if (denom > 0.0) rescaled.betas.row(li) *= y_hat.dot(d.y) / denom;
  }

  const Dendrogram dend = build_dendrogram(sample_covariance(d), linkage_from_string(f.linkage));
  const Partition part = cut_into_k(dend, k);
  const ComponentPath cpath = component_lasso_path(d, part, alpha, grid);
  EnetPath pre, post;
  pre.grid = post.grid = grid;
  pre.alpha = post.alpha = alpha;
  pre.betas = cpath.pre_betas;
  post.betas = cpath.post_betas;

  fs::create_directories(f.out_dir);
  const fs::path out = fs::path(f.out_dir) / "paths.csv";
  write_path_csv(out.string(),
                 {{"naive_enet", &naive},
                  {"enet", &rescaled},
                  {"component_lasso_pre_nnls", &pre},
                  {"component_lasso", &post}},
                 d.feature_names);
  write_dendrogram_csv((fs::path(f.out_dir) / "dendrogram.csv").string(), dend);
  write_manifest(f.out_dir, "paths", f.seed, argv);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& suite, int reps, std::uint64_t seed,
                 const std::string& out_dir, const std::vector<std::string>& argv) {
  const SimName name = sim_name_from_string(suite);
  fs::create_directories(out_dir);
  for (int r = 0; r < reps; ++r) {
    const SimSpec spec = make_spec(name, seed + static_cast<std::uint64_t>(r));
    const SimData data = generate(spec);
    char sub[32];
    std::snprintf(sub, sizeof(sub), "rep%03d", r);
    const fs::path dir = fs::path(out_dir) / sub;
    fs::create_directories(dir);

    std::vector<std::string> header;
    for (int j = 0; j < data.raw.p(); ++j) header.push_back("x" + std::to_string(j + 1));
    write_csv_matrix(dir / "X.csv", data.raw.X, header);
    write_csv_matrix(dir / "y.csv", data.raw.y, {"y"});
    save_json(split_to_json(data.split), (dir / "split.json").string());

    Json truth{{"beta_true", std::vector<double>(data.beta_true.data(),
                                                 data.beta_true.data() + data.beta_true.size())},
               {"sigma", spec.sigma},
               {"true_partition", partition_to_json(data.true_partition)},
               {"seed", spec.seed}};
    save_json(truth, (dir / "truth.json").string());
  }
  write_manifest(out_dir, "simulate", seed, argv);
  std::cout << "wrote " << reps << " replicates under " << out_dir << "\n";
  return 0;
}

int run_bench_suite(SimName suite, const bench::BenchOptions& opts, const fs::path& out_dir) {
  const bench::SuiteResult result = bench::run_suite(suite, opts);
  const auto summary = bench::summarize(result, opts.seed + 1000003);
  const std::string tag = to_string(suite);
  write_results_csv((out_dir / ("results_" + tag + ".csv")).string(), result);
  write_summary_csv((out_dir / ("bench_" + tag + ".csv")).string(), summary);
  write_noc_csv((out_dir / ("noc_" + tag + ".csv")).string(), bench::noc_histogram(result));
  const std::string table = render_summary_table(summary);
  std::ofstream txt(out_dir / ("bench_" + tag + ".txt"));
  txt << table;
  std::cout << "== " << tag << " ==\n" << table;
  return 0;
}

int cmd_bench(const std::string& suite, int reps, std::uint64_t seed, int jobs,
              const CommonFitFlags& f, const std::vector<std::string>& argv) {
  bench::BenchOptions opts;
  opts.n_reps = reps;
  opts.seed = seed;
  opts.jobs = jobs;
  opts.grid = make_grid(f);

  fs::create_directories(f.out_dir);
  const fs::path out_dir(f.out_dir);
  if (suite == "all") {
    for (const auto name : {SimName::orthogonal, SimName::ex1, SimName::ex2a, SimName::ex2b,
                            SimName::ex3, SimName::ex4}) {
      run_bench_suite(name, opts, out_dir);
    }
  } else {
    run_bench_suite(sim_name_from_string(suite), opts, out_dir);
  }
  write_manifest(out_dir, "bench", seed, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Component lasso: sparse regression via covariance connected components"};
  app.require_subcommand(1);

  std::vector<std::string> raw_args(argv + 1, argv + argc);

  CommonFitFlags flags;
  std::string data_path;

  auto* fit = app.add_subcommand("fit", "Fit an estimator to a CSV and write model/report JSON");
  fit->add_option("data", data_path, "input CSV")->required();
  fit->add_option("--estimator", flags.estimator,
                  "lasso|rescaled_lasso|lasso_ols_hybrid|ridge|naive_enet|enet|component_lasso");
  fit->add_option("--response", flags.response, "response column name (default y)");
  fit->add_option("--alpha-grid", flags.alpha_grid, "comma-separated alphas");
  fit->add_option("--k-grid", flags.k_grid, "e.g. 1..8 or 1,2,4");
  fit->add_option("--linkage", flags.linkage, "single|average|complete");
  fit->add_option("--holdout", flags.holdout, "holdout validation fraction");
  fit->add_option("--folds", flags.folds, "k-fold cross-validation");
  fit->add_option("--seed", flags.seed, "RNG seed");
  fit->add_option("--lambda-eps", flags.lambda_eps, "path grid lower bound ratio");
  fit->add_option("--out-dir", flags.out_dir, "output directory");

  double paths_alpha = 1.0;
  int paths_k = 2;
  auto* paths = app.add_subcommand("paths", "Emit coefficient-path CSV data");
  paths->add_option("data", data_path, "input CSV")->required();
  paths->add_option("--response", flags.response, "response column name");
  paths->add_option("--alpha", paths_alpha, "elastic net alpha");
  paths->add_option("--k", paths_k, "number of components");
  paths->add_option("--linkage", flags.linkage, "single|average|complete");
  paths->add_option("--out-dir", flags.out_dir, "output directory");

  std::string suite = "ex1";
  int reps = 100;
  std::uint64_t seed = 42;
  int jobs = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Run a simulation suite and write tables");
  bench_cmd->add_option("--suite", suite, "orthogonal|ex1|ex2a|ex2b|ex3|ex4|all")->required();
  bench_cmd->add_option("--reps", reps, "number of replicates");
  bench_cmd->add_option("--seed", seed, "base seed; replicate r uses seed+r");
  bench_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  bench_cmd->add_option("--alpha-grid", flags.alpha_grid, "comma-separated alphas");
  bench_cmd->add_option("--k-grid", flags.k_grid, "e.g. 1..8");
  bench_cmd->add_option("--linkage", flags.linkage, "single|average|complete");
  bench_cmd->add_option("--lambda-eps", flags.lambda_eps, "path grid lower bound ratio");
  bench_cmd->add_option("--out-dir", flags.out_dir, "output directory");

  auto* sim = app.add_subcommand("simulate", "Write simulated replicate datasets");
  sim->add_option("--suite", suite, "orthogonal|ex1|ex2a|ex2b|ex3|ex4")->required();
  sim->add_option("--reps", reps, "number of replicates");
  sim->add_option("--seed", seed, "base seed");
  sim->add_option("--out-dir", flags.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*fit) return cmd_fit(flags, data_path, raw_args);
    if (*paths) return cmd_paths(flags, data_path, paths_alpha, paths_k, raw_args);
    if (*bench_cmd) return cmd_bench(suite, reps, seed, jobs, flags, raw_args);
    if (*sim) return cmd_simulate(suite, reps, seed, flags.out_dir, raw_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
