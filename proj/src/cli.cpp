#include "smoothspec/cli.hpp"

#include "smoothspec/coeff.hpp"
#include "smoothspec/data_sim.hpp"
#include "smoothspec/error.hpp"
#include "smoothspec/lemma_check.hpp"
#include "smoothspec/matrix_io.hpp"
#include "smoothspec/metrics.hpp"
#include "smoothspec/pipeline.hpp"
#include "smoothspec/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace smoothspec {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ClusterArgs {
  std::string input;
  bool header = false;
  std::string labels = "none";
  int k = 0;
  std::string method = "smooth";
  std::string similarity = "zp";
  std::optional<double> sigma;
  int l = 7;
  int knn_k = 10;
  std::optional<int> p;
  double alpha1 = 0.01, alpha2 = 0.01, alpha3 = 0.01, alpha4 = 1.0;
  std::optional<double> tiny_epsilon;
  double tiny_epsilon_rel = 0.01;
  int w_diag = 0;
  std::uint64_t seed = 0;
  int restarts = 10;
  std::string out_dir = "out";
  bool dump = false;
};

PipelineConfig to_config(const ClusterArgs& a) {
  PipelineConfig cfg;
  cfg.k = a.k;
  cfg.method = parse_method(a.method);
  cfg.similarity = parse_similarity(a.similarity);
  cfg.sigma = a.sigma;
  cfg.l = a.l;
  cfg.knn_k = a.knn_k;
  cfg.p = a.p;
  cfg.params = {a.alpha1, a.alpha2, a.alpha3, a.alpha4};
  cfg.tiny_epsilon = a.tiny_epsilon;
  cfg.tiny_epsilon_rel = a.tiny_epsilon_rel;
  if (a.w_diag != 0 && a.w_diag != 1) throw ConfigError("--w-diag must be 0 or 1");
  cfg.w_diag = a.w_diag == 1 ? ReachDiagonal::one : ReachDiagonal::zero;
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.validate();
  return cfg;
}

void write_bounds(const fs::path& path, const PipelineResult& res, const SmoothParams& params, std::uint64_t seed) {
  BoundReportOptions opts;
  opts.max_triples = 100'000;
  opts.seed = seed;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& row : grouping_bound_report(*res.z, res.x, res.w, res.ww, params, opts)) {
    nlohmann::json j{{"i", row.i},
                     {"j", row.j},
                     {"p", row.p},
                     {"lhs", row.lhs},
                     {"bound_corrected", row.bound_corrected},
                     {"bound_paper", row.bound_paper}};
    out << j.dump() << '\n';
  }
}

int run_cluster(const ClusterArgs& args, std::ostream& out) {
  const PipelineConfig cfg = to_config(args);

  CsvOptions csv;
  csv.skip_header = args.header;
  csv.label_column = args.labels == "last-column";
  Dataset data = load_csv(args.input, csv);
  if (args.labels != "none" && args.labels != "last-column") data.labels = load_labels(args.labels);
  if (data.labels && data.labels->size() != static_cast<std::size_t>(data.features.rows())) {
    throw ConfigError("label count " + std::to_string(data.labels->size()) + " differs from row count " +
                      std::to_string(data.features.rows()));
  }

  const PipelineResult res = run_pipeline(data.features, cfg);

  const fs::path dir = args.out_dir;
  fs::create_directories(dir);
  RunReport report = make_report(cfg, res);

  const fs::path labels_path = dir / "labels.csv";
  write_labels(labels_path, res.assignment.labels);
  report.outputs["labels"] = labels_path.string();

  if (args.dump) {
    write_csv(dir / "W.csv", res.w.values);
    write_csv(dir / "WW.csv", res.ww.values);
    write_csv(dir / "X.csv", res.x);
    write_labels(dir / "tiny_assignment.csv", res.tiny.assignment);
    report.outputs["W"] = (dir / "W.csv").string();
    report.outputs["WW"] = (dir / "WW.csv").string();
    report.outputs["X"] = (dir / "X.csv").string();
    report.outputs["tiny_assignment"] = (dir / "tiny_assignment.csv").string();
    if (res.z) {
      write_csv(dir / "Z.csv", *res.z);
      SmoothParams params = cfg.params;
      if (cfg.method == Method::rosc) params.alpha3 = 0.0;
      write_bounds(dir / "bounds.jsonl", res, params, cfg.seed);
      report.outputs["Z"] = (dir / "Z.csv").string();
      report.outputs["bounds"] = (dir / "bounds.jsonl").string();
    }
  }

  if (data.labels) {
    report.metrics["nmi"] = nmi(res.assignment.labels, *data.labels);
    report.metrics["purity"] = purity(res.assignment.labels, *data.labels);
    report.metrics["rand_index"] = rand_index(res.assignment.labels, *data.labels);
  }

  const fs::path report_path = dir / "report.json";
  report.outputs["report"] = report_path.string();
  {
    std::ofstream rep(report_path, std::ios::trunc);
    if (!rep) throw std::runtime_error("cannot write " + report_path.string());
    rep << to_json(report).dump(2) << '\n';
  }

  out << "clustered " << data.features.rows() << " objects (" << res.tiny.count() << " tiny clusters) into k = "
      << cfg.k << "\n";
  for (const auto& [name, value] : report.metrics) out << name << " = " << value << "\n";
  for (const auto& w : res.warnings) out << "warning: " << w << "\n";
  out << "labels: " << labels_path.string() << "\nreport: " << report_path.string() << "\n";
  return kExitOk;
}

int run_verify(int seeds, double slack, std::ostream& out) {
  const LemmaSummary s = verify_lemmas(seeds, {}, slack);
  out << "instances: " << s.instances << "\n"
      << "max stationarity residual: " << s.max_residual << "\n"
      << "max fixed-point deviation: " << s.max_entrywise_deviation << "\n"
      << "max |smooth(alpha3=0) - rosc|: " << s.max_rosc_gap << "\n"
      << "bound triples checked: " << s.triples << "\n"
      << "corrected bound violations: " << s.corrected_violations << "\n"
      << "original-constant bound violations: " << s.paper_violations << " (reported only)\n"
      << "max twin-pair coefficient gap: " << s.max_twin_gap << "\n"
      << (s.passed() ? "PASS" : "FAIL") << "\n";
  return s.passed() ? kExitOk : kExitRuntime;
}

int run_gen(const std::string& spec_path, std::uint64_t seed, const std::string& output, bool with_labels,
            std::ostream& out) {
  std::ifstream in(spec_path);
  if (!in) throw ConfigError("cannot open cluster spec " + spec_path);
  std::stringstream text;
  text << in.rdbuf();
  const Dataset ds = generate_multiscale(cluster_specs_from_json(text.str()), seed);

  std::ofstream csv(output, std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + output);
  char buf[32];
  for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
    for (Eigen::Index c = 0; c < ds.features.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ds.features(i, c));
      if (c > 0) csv << ',';
      csv << buf;
    }
    if (with_labels) csv << ',' << (*ds.labels)[static_cast<std::size_t>(i)];
    csv << '\n';
  }
  out << "wrote " << ds.features.rows() << " points to " << output << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothness-regularised spectral clustering for multi-scale data"};
  app.name("smoothspec");
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "Cluster a CSV dataset");
  cluster->add_option("--input", ca.input, "CSV file, one object per row")->required();
  cluster->add_flag("--header", ca.header, "Skip the first non-blank line");
  cluster->add_option("--labels", ca.labels, "none | last-column | PATH to a label file");
  cluster->add_option("--k", ca.k, "Number of clusters")->required();
  cluster->add_option("--method", ca.method, "smooth | rosc | pic-baseline")
      ->check(CLI::IsMember({"smooth", "rosc", "pic-baseline"}));
  cluster->add_option("--similarity", ca.similarity, "zp | gaussian")->check(CLI::IsMember({"zp", "gaussian"}));
  cluster->add_option("--sigma", ca.sigma, "Gaussian kernel width");
  cluster->add_option("--l", ca.l, "ZP neighbour rank");
  cluster->add_option("--knn-k", ca.knn_k, "Mutual K-NN size");
  cluster->add_option("--p", ca.p, "Number of pseudo-eigenvectors (default k+1)");
  cluster->add_option("--alpha1", ca.alpha1, "Weight of |Z|^2 (> 0)");
  cluster->add_option("--alpha2", ca.alpha2, "Weight of |Z - W|^2");
  cluster->add_option("--alpha3", ca.alpha3, "Weight of the smoothness term");
  cluster->add_option("--alpha4", ca.alpha4, "Path-count threshold inside the smoothness term");
  cluster->add_option("--tiny-epsilon", ca.tiny_epsilon, "Absolute tiny-cluster merge distance");
  cluster->add_option("--tiny-epsilon-rel", ca.tiny_epsilon_rel, "Merge distance as a fraction of the median distance");
  cluster->add_option("--w-diag", ca.w_diag, "Diagonal of the reachability matrix (0 or 1)");
  cluster->add_option("--seed", ca.seed, "Random seed");
  cluster->add_option("--restarts", ca.restarts, "k-means restarts");
  cluster->add_option("--out", ca.out_dir, "Output directory");
  cluster->add_flag("--dump-intermediates", ca.dump, "Also write W, WW, X, Z and the bound report");

  int seeds = 50;
  double slack = 1e-12;
  auto* verify = app.add_subcommand("verify-lemmas", "Check the closed-form coefficient results on random instances");
  verify->add_option("--seeds", seeds, "Number of random instances");
  verify->add_option("--bound-slack", slack, "Absolute slack on the grouping bound");

  std::string spec_path, gen_out = "data.csv";
  std::uint64_t gen_seed = 0;
  bool no_labels = false;
  auto* gen = app.add_subcommand("gen-data", "Generate a multi-scale Gaussian-blob dataset");
  gen->add_option("--spec", spec_path, "JSON cluster spec")->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--output", gen_out, "CSV output path");
  gen->add_flag("--no-labels", no_labels, "Omit the trailing label column");

  std::vector<std::string> storage{"smoothspec"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*cluster) return run_cluster(ca, out);
    if (*verify) return run_verify(seeds, slack, out);
    if (*gen) return run_gen(spec_path, gen_seed, gen_out, !no_labels, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const StageError& e) {
    err << (e.is_config_error() ? "config error: " : "error: ") << e.what() << "\n";
    return e.is_config_error() ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace smoothspec
