#include "smoothspec/tiny_cluster.hpp"

#include "smoothspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace smoothspec {

namespace {

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  // Keeps the smaller index as root.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

TinyClusterMap build_tiny_clusters(const FeatureMatrix& x, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("tiny-cluster epsilon must be finite and non-negative");
  }
  const int n = static_cast<int>(x.rows());
  const double eps2 = epsilon * epsilon;

  DisjointSets sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((x.row(i) - x.row(j)).squaredNorm() <= eps2) sets.unite(i, j);
    }
  }

  TinyClusterMap map;
  map.assignment.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> root_id(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = sets.find(i);
    if (root_id[r] < 0) {
      root_id[r] = map.count();
      map.sizes.push_back(0);
    }
    map.assignment[i] = root_id[r];
    ++map.sizes[root_id[r]];
  }

  map.centers = FeatureMatrix::Zero(map.count(), x.cols());
  for (int i = 0; i < n; ++i) map.centers.row(map.assignment[i]) += x.row(i);
  for (int t = 0; t < map.count(); ++t) {
    if (map.sizes[t] > 1) map.centers.row(t) /= static_cast<double>(map.sizes[t]);
  }
  return map;
}

double median_pairwise_distance(const FeatureMatrix& x, std::uint64_t seed, std::size_t max_pairs) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  if (n < 2) throw ConfigError("median pairwise distance needs at least 2 objects");

  std::vector<double> dist;
  const std::size_t all_pairs = n * (n - 1) / 2;
  if (all_pairs <= max_pairs) {
    dist.reserve(all_pairs);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        dist.push_back((x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm());
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    dist.reserve(max_pairs);
    while (dist.size() < max_pairs) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i == j) continue;
      dist.push_back((x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm());
    }
  }

  std::sort(dist.begin(), dist.end());
  const std::size_t mid = dist.size() / 2;
  return dist.size() % 2 == 1 ? dist[mid] : 0.5 * (dist[mid - 1] + dist[mid]);
}

LabelVector expand_labels(const TinyClusterMap& map, const LabelVector& center_labels) {
  if (center_labels.size() != map.sizes.size()) {
    throw ConfigError("expand_labels: got " + std::to_string(center_labels.size()) + " center labels for " +
                      std::to_string(map.sizes.size()) + " tiny clusters");
  }
  LabelVector out(map.assignment.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = center_labels[map.assignment[i]];
  return out;
}

}  // namespace smoothspec
