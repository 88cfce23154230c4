#include "smoothspec/spectral.hpp"

#include "smoothspec/error.hpp"
#include "smoothspec/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace smoothspec {

SimilarityMatrix affinity_from_z(const Matrix& z) {
  if (z.rows() != z.cols()) throw ConfigError("coefficient matrix must be square");
  if (!z.allFinite()) throw NumericalError("coefficient matrix has non-finite entries");
  const Eigen::Index n = z.rows();
  SimilarityMatrix a = SimilarityMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 0.5 * (std::abs(z(i, j)) + std::abs(z(j, i)));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

SpectralEmbedding spectral_embed(const SimilarityMatrix& a, int k) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ConfigError("affinity matrix must be square");
  if (k < 1 || k > n) {
    throw ConfigError("spectral embedding dimension k must lie in [1, n], got " + std::to_string(k));
  }

  SpectralEmbedding out;
  Vector inv_sqrt_deg(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double deg = a.row(i).sum();
    if (!(deg > 0.0)) {
      out.isolated.push_back(static_cast<int>(i));
      deg = 1e-12;
    }
    inv_sqrt_deg(i) = 1.0 / std::sqrt(deg);
  }
  if (static_cast<Eigen::Index>(out.isolated.size()) == n) {
    throw NumericalError("affinity matrix is all zero; every vertex is isolated");
  }

  Matrix lap = -(inv_sqrt_deg.asDiagonal() * a * inv_sqrt_deg.asDiagonal());
  lap.diagonal().array() += 1.0;
  lap = 0.5 * (lap + lap.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed to converge");

  out.eigenvalues = eig.eigenvalues().head(k);
  out.rows = eig.eigenvectors().leftCols(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = out.rows.row(i).norm();
    if (norm > 0.0) out.rows.row(i) /= norm;
  }
  return out;
}

namespace {

struct LloydRun {
  LabelVector labels;
  double inertia = std::numeric_limits<double>::infinity();
};

int nearest(const Matrix& centroids, const Eigen::RowVectorXd& point, double& best) {
  int arg = 0;
  best = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - point).squaredNorm();
    if (d < best) {
      best = d;
      arg = static_cast<int>(c);
    }
  }
  return arg;
}

Matrix seed_plus_plus(const Matrix& pts, int k, std::mt19937_64& rng) {
  const Eigen::Index n = pts.rows();
  Matrix centroids(k, pts.cols());
  centroids.row(0) = pts.row(std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng));
  Vector d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = (pts.row(i) - centroids.row(0)).squaredNorm();

  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= d2(i);
        if (target < 0.0 && d2(i) > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng);
    }
    centroids.row(c) = pts.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::min(d2(i), (pts.row(i) - centroids.row(c)).squaredNorm());
  }
  return centroids;
}

LloydRun lloyd(const Matrix& pts, int k, int max_iterations, std::mt19937_64& rng) {
  const Eigen::Index n = pts.rows();
  Matrix centroids = seed_plus_plus(pts, k, rng);
  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), -1);

  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = 0.0;
      const int c = nearest(centroids, pts.row(i), d);
      if (c != run.labels[i]) {
        run.labels[i] = c;
        changed = true;
      }
    }
    if (!changed) break;

    Matrix sums = Matrix::Zero(k, pts.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(run.labels[i]) += pts.row(i);
      ++counts[run.labels[i]];
    }
    // empty clusters keep their previous centroid
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) centroids.row(c) = sums.row(c) / counts[c];
    }
  }

  run.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) run.inertia += (pts.row(i) - centroids.row(run.labels[i])).squaredNorm();
  return run;
}

}  // namespace

ClusterAssignment kmeans(const Matrix& points, int k, const KMeansOptions& opts) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) throw ConfigError("k-means needs 1 <= k <= n = " + std::to_string(n));
  if (opts.restarts < 1) throw ConfigError("k-means restarts must be >= 1");
  if (opts.max_iterations < 1) throw ConfigError("k-means iteration cap must be >= 1");
  if (!points.allFinite()) throw NumericalError("k-means input has non-finite entries");

  std::vector<LloydRun> runs(static_cast<std::size_t>(opts.restarts));
  parallel_for(runs.size(), [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(r), 0x6b6du};
    std::mt19937_64 rng(seq);
    runs[r] = lloyd(points, k, opts.max_iterations, rng);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }

  ClusterAssignment out;
  out.k = k;
  out.inertia = runs[best].inertia;
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  out.labels.reserve(static_cast<std::size_t>(n));
  for (int c : runs[best].labels) {
    if (remap[c] < 0) remap[c] = next++;
    out.labels.push_back(remap[c]);
  }
  out.degenerate = next < k;
  return out;
}

}  // namespace smoothspec
