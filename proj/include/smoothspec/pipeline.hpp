#pragma once

#include "smoothspec/coeff.hpp"
#include "smoothspec/spectral.hpp"
#include "smoothspec/tiny_cluster.hpp"
#include "smoothspec/tknn.hpp"
#include "smoothspec/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smoothspec {

enum class Method { smooth, rosc, pic_baseline };
enum class SimilarityKind { zp, gaussian };

std::string to_string(Method m);
std::string to_string(SimilarityKind s);
Method parse_method(const std::string& s);
SimilarityKind parse_similarity(const std::string& s);

struct PipelineConfig {
  int k = 2;
  Method method = Method::smooth;
  SimilarityKind similarity = SimilarityKind::zp;
  std::optional<double> sigma;       // required for gaussian similarity
  int l = 7;                         // ZP neighbour rank
  int knn_k = 10;                    // mutual K-NN
  std::optional<int> p;              // pseudo-eigenvectors, default k + 1
  SmoothParams params;
  std::optional<double> tiny_epsilon;  // absolute; overrides the relative value
  double tiny_epsilon_rel = 0.01;      // fraction of the median pairwise distance
  ReachDiagonal w_diag = ReachDiagonal::zero;
  std::uint64_t seed = 0;
  int restarts = 10;
  int pi_t_max = 1000;
  double pi_eps_accel = 1e-5;

  int effective_p() const { return p.value_or(k + 1); }
  /// Throws ConfigError naming the offending parameter.
  void validate() const;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineResult {
  ClusterAssignment assignment;  // on the original objects
  LabelVector center_labels;     // on tiny-cluster centers
  TinyClusterMap tiny;
  double tiny_epsilon = 0.0;
  int effective_l = 0;
  int effective_knn_k = 0;
  std::vector<int> pi_iterations;
  std::optional<double> max_stationarity_residual;  // absent for pic-baseline
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;

  // Intermediates on the tiny-cluster centers.
  ReachMatrix w;
  SecondOrderMatrix ww;
  Matrix x;  // p x m pseudo-eigenvectors
  std::optional<CoeffMatrix> z;
};

/// tiny clusters -> similarity -> TKNN (W, WW) -> PI embedding -> Z ->
/// affinity -> spectral embedding -> k-means -> labels on original objects.
/// Stage failures are rethrown as StageError.
PipelineResult run_pipeline(const FeatureMatrix& x, const PipelineConfig& cfg);

}  // namespace smoothspec
