#pragma once

#include "smoothspec/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace smoothspec {

struct Dataset {
  FeatureMatrix features;
  std::optional<LabelVector> labels;
};

struct CsvOptions {
  bool label_column = false;  // strip the last column into labels
  bool skip_header = false;
};

/// Reads a comma-separated numeric table. Blank lines are ignored.
/// Throws ParseError (1-based row/col) on ragged rows or non-numeric cells,
/// std::runtime_error when the file cannot be opened.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// Parses CSV text already in memory; same rules as load_csv.
Dataset parse_csv(std::string_view text, const CsvOptions& opts = {});

/// Single-column label file, one non-negative integer per line.
LabelVector load_labels(const std::filesystem::path& path, bool skip_header = false);

/// Checks n >= 2, d >= 1 and that every entry is finite.
void validate_features(const FeatureMatrix& x);

/// Squared Euclidean distances, computed pairwise (no Gram-matrix shortcut,
/// so coincident rows give exactly 0).
Matrix pairwise_sq_distances(const FeatureMatrix& x);

/// S_ij = exp(-|x_i - x_j|^2 / (2 sigma^2)) off the diagonal, 0 on it.
SimilarityMatrix gaussian_similarity(const FeatureMatrix& x, double sigma);

/// Local scale of each object: distance to its l-th nearest neighbour,
/// self excluded. Zero scales (duplicates) are clamped to the smallest
/// positive pairwise distance, or 1e-12 when all points coincide.
Vector local_scales(const FeatureMatrix& x, int l);

/// Self-tuning similarity S_ij = exp(-|x_i - x_j|^2 / (sigma_i sigma_j)).
SimilarityMatrix zp_similarity(const FeatureMatrix& x, int l);

struct ClusterSpec {
  std::vector<double> center;
  std::vector<double> spread;  // per axis; size 1 means isotropic
  int count = 0;
};

/// Parses `[{"center":[..], "spread":[..] | scalar, "count":int}, ...]`.
std::vector<ClusterSpec> cluster_specs_from_json(std::string_view text);

/// Axis-aligned Gaussian blobs, points grouped by spec in order.
/// Label of each point is the index of its spec. Deterministic in seed.
Dataset generate_multiscale(const std::vector<ClusterSpec>& specs, std::uint64_t seed);

}  // namespace smoothspec
