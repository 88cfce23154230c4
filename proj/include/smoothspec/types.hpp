#pragma once

#include <Eigen/Dense>

#include <vector>

namespace smoothspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

// n objects x d features, one object per row.
using FeatureMatrix = Eigen::MatrixXd;

// Symmetric n x n, entries in [0,1], zero diagonal.
using SimilarityMatrix = Eigen::MatrixXd;

using LabelVector = std::vector<int>;

}  // namespace smoothspec
