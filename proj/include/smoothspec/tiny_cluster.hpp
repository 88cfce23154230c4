#pragma once

#include "smoothspec/types.hpp"

#include <cstdint>
#include <vector>

namespace smoothspec {

// Grouping of near-coincident objects. Downstream stages work on `centers`.
struct TinyClusterMap {
  std::vector<int> assignment;  // object -> tiny-cluster id in [0, m)
  FeatureMatrix centers;        // m x d, member means
  std::vector<int> sizes;       // member counts, sum = n

  int count() const { return static_cast<int>(sizes.size()); }
};

/// Connected components of the graph joining pairs at Euclidean distance
/// <= epsilon. Ids are ordered by the smallest member index.
TinyClusterMap build_tiny_clusters(const FeatureMatrix& x, double epsilon);

/// Median pairwise Euclidean distance. Exact when n(n-1)/2 <= max_pairs,
/// otherwise estimated on max_pairs seeded random pairs.
double median_pairwise_distance(const FeatureMatrix& x, std::uint64_t seed, std::size_t max_pairs = 1000);

/// Maps per-center labels back to the original objects.
LabelVector expand_labels(const TinyClusterMap& map, const LabelVector& center_labels);

}  // namespace smoothspec
