#include "complasso/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "complasso/errors.hpp"

namespace complasso {

namespace {

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const Json& j) {
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

Json dataset_manifest(const Dataset& d) {
  return Json{{"n", d.n()},
              {"p", d.p()},
              {"col_means", vector_to_json(d.col_means)},
              {"col_scales", vector_to_json(d.col_scales)},
              {"y_mean", d.y_mean}};
}

Json partition_to_json(const Partition& part) {
  Json j{{"K", part.K}, {"assignment", part.assignment}};
  if (part.tau) {
    j["tau"] = *part.tau;
  } else {
    j["tau"] = nullptr;
  }
  return j;
}

Partition partition_from_json(const Json& j) {
  Partition part;
  part.K = j.at("K").get<int>();
  part.assignment = j.at("assignment").get<std::vector<int>>();
  if (j.contains("tau") && !j["tau"].is_null()) part.tau = j["tau"].get<double>();
  return part;
}

Json fit_report_to_json(const FitReport& report) {
  Json j{{"estimator", report.estimator},
         {"beta_hat", vector_to_json(report.beta_hat)},
         {"validation_mse", report.validation_mse},
         {"n_nonzero", report.n_nonzero},
         {"singular_flag", report.singular_flag},
         {"col_means", vector_to_json(report.col_means)},
         {"col_scales", vector_to_json(report.col_scales)},
         {"y_mean", report.y_mean},
         {"feature_names", report.feature_names}};
  Json params{{"K", report.params.K},
              {"alpha", report.params.alpha},
              {"lambda", report.params.lambda}};
  params["tau"] = report.params.tau ? Json(*report.params.tau) : Json(nullptr);
  j["params"] = params;
  j["partition"] = report.partition ? partition_to_json(*report.partition) : Json(nullptr);
  j["nnls_weights"] = vector_to_json(report.nnls_weights);
  return j;
}

FitReport fit_report_from_json(const Json& j) {
  FitReport r;
  r.estimator = j.at("estimator").get<std::string>();
  r.beta_hat = vector_from_json(j.at("beta_hat"));
  r.validation_mse = j.at("validation_mse").get<double>();
  r.n_nonzero = j.at("n_nonzero").get<int>();
  r.singular_flag = j.at("singular_flag").get<bool>();
  r.col_means = vector_from_json(j.at("col_means"));
  r.col_scales = vector_from_json(j.at("col_scales"));
  r.y_mean = j.at("y_mean").get<double>();
  r.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  const Json& params = j.at("params");
  r.params.K = params.at("K").get<int>();
  r.params.alpha = params.at("alpha").get<double>();
  r.params.lambda = params.at("lambda").get<double>();
  if (!params.at("tau").is_null()) r.params.tau = params["tau"].get<double>();
  if (!j.at("partition").is_null()) r.partition = partition_from_json(j["partition"]);
  r.nnls_weights = vector_from_json(j.at("nnls_weights"));
  return r;
}

Json component_model_to_json(const ComponentModel& model) {
  Json j{{"partition", partition_to_json(model.partition)},
         {"pre_nnls_beta", vector_to_json(model.pre_nnls_beta)},
         {"beta_hat", vector_to_json(model.beta_hat)},
         {"weights", vector_to_json(model.weights.c)},
         {"kkt_residual", model.weights.kkt_residual}};
  Json sel{{"K", model.selected.K},
           {"alpha", model.selected.alpha},
           {"lambda", model.selected.lambda}};
  sel["tau"] = model.selected.tau ? Json(*model.selected.tau) : Json(nullptr);
  j["selected"] = sel;
  return j;
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_path_csv(const std::string& path,
                    const std::vector<std::pair<std::string, const EnetPath*>>& paths,
                    const std::vector<std::string>& feature_names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "method,lambda,feature,coefficient\n";
  for (const auto& [method, ep] : paths) {
    for (std::size_t li = 0; li < ep->grid.size(); ++li) {
      for (int j = 0; j < ep->betas.cols(); ++j) {
        const std::string feat =
            j < static_cast<int>(feature_names.size()) ? feature_names[j] : "x" + std::to_string(j);
        out << method << ',' << format_double(ep->grid[li]) << ',' << feat << ','
            << format_double(ep->betas(static_cast<int>(li), j)) << '\n';
      }
    }
  }
}

void write_dendrogram_csv(const std::string& path, const Dendrogram& dend) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "a,b,height\n";
  for (const auto& m : dend.merges) {
    out << m.a << ',' << m.b << ',' << format_double(m.height) << '\n';
  }
}

void write_results_csv(const std::string& path, const bench::SuiteResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "estimator,replicate,beta_mse,test_mse,fp,fn,K,alpha,lambda\n";
  for (const auto& r : result.rows) {
    out << r.estimator << ',' << r.replicate << ',' << format_double(r.beta_mse) << ','
        << format_double(r.test_mse) << ',' << format_double(r.fp) << ',' << format_double(r.fn)
        << ',' << r.K << ',' << format_double(r.alpha) << ',' << format_double(r.lambda) << '\n';
  }
}

namespace {

std::string se_or_na(double v) {
  return std::isnan(v) ? std::string("NA") : format_double(v);
}

}  // namespace

void write_summary_csv(const std::string& path, const std::vector<bench::SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "estimator,median_mse,se_mse,median_fp,se_fp,median_fn,se_fn\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << format_double(r.median_mse) << ',' << se_or_na(r.se_mse) << ','
        << format_double(r.median_fp) << ',' << se_or_na(r.se_fp) << ','
        << format_double(r.median_fn) << ',' << se_or_na(r.se_fn) << '\n';
  }
}

std::string render_summary_table(const std::vector<bench::SummaryRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(22) << "Method" << std::setw(18) << "Median MSE" << std::setw(16)
      << "Median FP" << std::setw(16) << "Median FN" << '\n';
  auto cell = [](double med, double se) {
    std::ostringstream c;
    c << std::setprecision(4) << med << " (";
    if (std::isnan(se)) {
      c << "NA";
    } else {
      c << std::setprecision(3) << se;
    }
    c << ")";
    return c.str();
  };
  for (const auto& r : rows) {
    out << std::left << std::setw(22) << r.estimator << std::setw(18)
        << cell(r.median_mse, r.se_mse) << std::setw(16) << cell(r.median_fp, r.se_fp)
        << std::setw(16) << cell(r.median_fn, r.se_fn) << '\n';
  }
  return out.str();
}

void write_noc_csv(const std::string& path, const std::vector<bench::NocBucket>& buckets) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "K,count,mean_misclassification\n";
  for (const auto& b : buckets) {
    out << b.K << ',' << b.count << ',' << format_double(b.mean_misclass) << '\n';
  }
}

}  // namespace complasso
