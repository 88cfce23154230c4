#pragma once

#include "smoothspec/types.hpp"

#include <vector>

namespace smoothspec {

// Symmetric 0/1 adjacency with zero diagonal: edge iff each endpoint is
// among the other's K nearest neighbours.
struct MutualKnnGraph {
  IntMatrix adjacency;
  int k = 0;
};

// Reachability matrix of the transitive K-NN graph.
struct ReachMatrix {
  IntMatrix values;
};

// W*W; entry (i,j) counts length-2 paths i -> k -> j.
struct SecondOrderMatrix {
  IntMatrix values;
};

enum class ReachDiagonal { zero, one };

/// Ties at equal distance go to the smaller object index.
MutualKnnGraph mutual_knn(const FeatureMatrix& x, int k);

/// Component id per vertex, numbered by smallest member index.
std::vector<int> connected_components(const IntMatrix& adjacency);

/// W_ij = 1 iff i != j lie in one connected component of `adjacency`.
/// The diagonal of the input is ignored; the output diagonal follows `diag`.
ReachMatrix reachability(const IntMatrix& adjacency, ReachDiagonal diag = ReachDiagonal::zero);
ReachMatrix reachability(const MutualKnnGraph& graph, ReachDiagonal diag = ReachDiagonal::zero);

SecondOrderMatrix second_order(const ReachMatrix& w);

}  // namespace smoothspec
