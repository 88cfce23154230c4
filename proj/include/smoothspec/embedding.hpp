#pragma once

#include "smoothspec/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smoothspec {

struct PiConfig {
  int p = 3;                // number of pseudo-eigenvectors
  int t_max = 1000;         // iteration cap per run
  double eps_accel = 1e-5;  // stop once |delta_t - delta_{t-1}|_inf <= eps_accel / n
  std::uint64_t seed = 0;

  void validate() const;
};

/// D^-1 S. Throws NumericalError naming the first object whose row sums to 0.
Matrix row_normalize(const SimilarityMatrix& s);

struct PowerIterationResult {
  Vector v;            // L1-normalised iterate at truncation
  int iterations = 0;  // steps taken
  bool truncated_early = false;  // acceleration rule fired before t_max
};

/// v_{t+1} = M v_t / |M v_t|_1, truncated by the acceleration rule or t_max.
PowerIterationResult power_iteration(const Matrix& m, const Vector& v0, const PiConfig& cfg);

/// Uniform [0,1) entries from (seed, run), L1-normalised. Platform independent.
Vector random_start(Eigen::Index n, std::uint64_t seed, std::uint64_t run);

// p x n; row r is the r-th truncated PI vector, columns have unit L2 norm.
struct PseudoEigenMatrix {
  Matrix values;
  std::vector<int> iterations;  // per run
  std::vector<std::string> warnings;
};

/// Runs p independent PI passes (run r seeded from (cfg.seed, r)), stacks the
/// iterates as rows and then scales each column to unit norm.
PseudoEigenMatrix generate_pseudo_eigenvectors(const Matrix& m, const PiConfig& cfg);

/// Scales every column to unit Euclidean norm; throws on an all-zero column.
void normalize_columns(Matrix& x);

}  // namespace smoothspec
