#include "smoothspec/pipeline.hpp"

#include "smoothspec/data_sim.hpp"
#include "smoothspec/embedding.hpp"
#include "smoothspec/error.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace smoothspec {

std::string to_string(Method m) {
  switch (m) {
    case Method::smooth: return "smooth";
    case Method::rosc: return "rosc";
    case Method::pic_baseline: return "pic-baseline";
  }
  return "?";
}

std::string to_string(SimilarityKind s) { return s == SimilarityKind::zp ? "zp" : "gaussian"; }

Method parse_method(const std::string& s) {
  if (s == "smooth") return Method::smooth;
  if (s == "rosc") return Method::rosc;
  if (s == "pic-baseline") return Method::pic_baseline;
  throw ConfigError("unknown method '" + s + "' (expected smooth, rosc or pic-baseline)");
}

SimilarityKind parse_similarity(const std::string& s) {
  if (s == "zp") return SimilarityKind::zp;
  if (s == "gaussian") return SimilarityKind::gaussian;
  throw ConfigError("unknown similarity '" + s + "' (expected zp or gaussian)");
}

void PipelineConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (l < 1) throw ConfigError("l must be >= 1");
  if (knn_k < 1) throw ConfigError("knn-k must be >= 1");
  if (effective_p() < 1) throw ConfigError("p must be >= 1");
  if (similarity == SimilarityKind::gaussian && (!sigma || !(*sigma > 0.0))) {
    throw ConfigError("gaussian similarity needs sigma > 0");
  }
  if (tiny_epsilon && !(*tiny_epsilon >= 0.0)) throw ConfigError("tiny-epsilon must be >= 0");
  if (!(tiny_epsilon_rel >= 0.0)) throw ConfigError("tiny-epsilon-rel must be >= 0");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
  if (pi_t_max < 1) throw ConfigError("PI iteration cap must be >= 1");
  if (!(pi_eps_accel > 0.0)) throw ConfigError("PI acceleration threshold must be > 0");
  params.validate();
}

namespace {

class StageRunner {
 public:
  explicit StageRunner(std::vector<StageTiming>& timings) : timings_(timings) {}

  template <typename F>
  auto operator()(const std::string& stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        record(stage, start);
      } else {
        auto out = body();
        record(stage, start);
        return out;
      }
    } catch (const StageError&) {
      throw;
    } catch (const ConfigError& e) {
      throw StageError(stage, e.what(), true);
    } catch (const std::exception& e) {
      throw StageError(stage, e.what(), false);
    }
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    timings_.push_back({stage, dt.count()});
  }

  std::vector<StageTiming>& timings_;
};

}  // namespace

PipelineResult run_pipeline(const FeatureMatrix& x_raw, const PipelineConfig& cfg) {
  PipelineResult res;
  StageRunner stage(res.timings);

  stage("config", [&] {
    cfg.validate();
    validate_features(x_raw);
  });

  stage("tiny_cluster", [&] {
    res.tiny_epsilon = cfg.tiny_epsilon ? *cfg.tiny_epsilon
                                        : cfg.tiny_epsilon_rel * median_pairwise_distance(x_raw, cfg.seed);
    res.tiny = build_tiny_clusters(x_raw, res.tiny_epsilon);
    const int m = res.tiny.count();
    if (m < 2) throw ConfigError("all objects merged into one tiny cluster; lower the tiny-cluster epsilon");
    if (m < cfg.k) {
      throw ConfigError("only " + std::to_string(m) + " tiny clusters for k = " + std::to_string(cfg.k) +
                        "; lower the tiny-cluster epsilon");
    }
  });
  const FeatureMatrix& centers = res.tiny.centers;
  const int m = res.tiny.count();
  res.effective_l = std::min(cfg.l, m - 1);
  res.effective_knn_k = std::min(cfg.knn_k, m - 1);
  if (res.effective_l != cfg.l) {
    res.warnings.push_back("l clamped to " + std::to_string(res.effective_l) + " (m = " + std::to_string(m) + ")");
  }
  if (res.effective_knn_k != cfg.knn_k) {
    res.warnings.push_back("knn-k clamped to " + std::to_string(res.effective_knn_k) + " (m = " + std::to_string(m) +
                           ")");
  }

  const SimilarityMatrix s = stage("similarity", [&] {
    return cfg.similarity == SimilarityKind::zp ? zp_similarity(centers, res.effective_l)
                                                : gaussian_similarity(centers, *cfg.sigma);
  });

  stage("tknn", [&] {
    res.w = reachability(mutual_knn(centers, res.effective_knn_k), cfg.w_diag);
    res.ww = second_order(res.w);
  });

  stage("embedding", [&] {
    PiConfig pi;
    pi.p = cfg.effective_p();
    pi.t_max = cfg.pi_t_max;
    pi.eps_accel = cfg.pi_eps_accel;
    pi.seed = cfg.seed;
    auto pe = generate_pseudo_eigenvectors(row_normalize(s), pi);
    res.x = std::move(pe.values);
    res.pi_iterations = std::move(pe.iterations);
    for (auto& w : pe.warnings) res.warnings.push_back(std::move(w));
  });

  Matrix cluster_points;
  if (cfg.method == Method::pic_baseline) {
    cluster_points = res.x.transpose();
  } else {
    stage("coeff", [&] {
      SmoothParams params = cfg.params;
      if (cfg.method == Method::rosc) {
        params.alpha3 = 0.0;
        res.z = solve_rosc(res.x, res.w, params.alpha1, params.alpha2);
      } else {
        res.z = solve_smooth(res.x, res.w, res.ww, params);
      }
      res.max_stationarity_residual = stationarity_residual(*res.z, res.x, res.w, res.ww, params).maxCoeff();
    });
    stage("spectral_embed", [&] {
      auto emb = spectral_embed(affinity_from_z(*res.z), cfg.k);
      if (!emb.isolated.empty()) {
        res.warnings.push_back(std::to_string(emb.isolated.size()) + " isolated vertices in the Z affinity");
      }
      cluster_points = std::move(emb.rows);
    });
  }

  stage("kmeans", [&] {
    KMeansOptions km;
    km.restarts = cfg.restarts;
    km.seed = cfg.seed;
    const ClusterAssignment on_centers = kmeans(cluster_points, cfg.k, km);
    res.center_labels = on_centers.labels;
    res.assignment = on_centers;
    res.assignment.labels = expand_labels(res.tiny, on_centers.labels);
  });
  return res;
}

}  // namespace smoothspec
