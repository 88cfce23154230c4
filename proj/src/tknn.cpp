#include "smoothspec/tknn.hpp"

#include "smoothspec/data_sim.hpp"
#include "smoothspec/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace smoothspec {

MutualKnnGraph mutual_knn(const FeatureMatrix& x, int k) {
  const int n = static_cast<int>(x.rows());
  if (k < 1 || k > n - 1) {
    throw ConfigError("mutual K-NN requires 1 <= K <= n-1 = " + std::to_string(n - 1) + ", got " +
                      std::to_string(k));
  }
  const Matrix d2 = pairwise_sq_distances(x);

  IntMatrix directed = IntMatrix::Zero(n, n);
  std::vector<int> order(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
      return d2(i, a) < d2(i, b) || (d2(i, a) == d2(i, b) && a < b);
    });
    for (int r = 0; r < k; ++r) directed(i, order[r]) = 1;
  }

  MutualKnnGraph g;
  g.k = k;
  g.adjacency = directed.cwiseMin(directed.transpose());
  return g;
}

std::vector<int> connected_components(const IntMatrix& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::queue<int> frontier;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int u = 0; u < n; ++u) {
        if (u != v && adjacency(v, u) != 0 && comp[u] < 0) {
          comp[u] = next;
          frontier.push(u);
        }
      }
    }
    ++next;
  }
  return comp;
}

ReachMatrix reachability(const IntMatrix& adjacency, ReachDiagonal diag) {
  if (adjacency.rows() != adjacency.cols()) throw ConfigError("adjacency matrix must be square");
  const int n = static_cast<int>(adjacency.rows());
  const auto comp = connected_components(adjacency);

  ReachMatrix w;
  w.values = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && comp[i] == comp[j]) w.values(i, j) = 1;
    }
    if (diag == ReachDiagonal::one) w.values(i, i) = 1;
  }
  return w;
}

ReachMatrix reachability(const MutualKnnGraph& graph, ReachDiagonal diag) {
  return reachability(graph.adjacency, diag);
}

SecondOrderMatrix second_order(const ReachMatrix& w) {
  return SecondOrderMatrix{w.values * w.values};
}

}  // namespace smoothspec
