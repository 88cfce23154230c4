#pragma once

#include "smoothspec/types.hpp"

#include <cstdint>
#include <vector>

namespace smoothspec {

struct ClusterAssignment {
  LabelVector labels;
  int k = 0;
  double inertia = 0.0;       // sum of squared distances to assigned centroid
  bool degenerate = false;    // some cluster id in [0,k) has no members
};

/// A = (|Z| + |Z'|) / 2 with zero diagonal.
SimilarityMatrix affinity_from_z(const Matrix& z);

struct SpectralEmbedding {
  Matrix rows;                    // n x k, unit-norm rows (zero rows stay zero)
  Vector eigenvalues;             // k smallest eigenvalues of L_sym, ascending
  std::vector<int> isolated;      // vertices with zero degree
};

/// Bottom-k eigenvectors of I - D^-1/2 A D^-1/2, row-normalised.
/// Zero-degree vertices get degree 1e-12; an all-zero A is rejected.
SpectralEmbedding spectral_embed(const SimilarityMatrix& a, int k);

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

/// Lloyd's algorithm with k-means++ seeding; best of `restarts` by inertia.
/// Labels are renumbered by first appearance.
ClusterAssignment kmeans(const Matrix& points, int k, const KMeansOptions& opts = {});

}  // namespace smoothspec
