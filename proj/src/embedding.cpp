#include "smoothspec/embedding.hpp"

#include "smoothspec/error.hpp"
#include "smoothspec/parallel.hpp"

#include <cmath>
#include <random>
#include <string>

namespace smoothspec {

void PiConfig::validate() const {
  if (p < 1) throw ConfigError("number of pseudo-eigenvectors p must be >= 1");
  if (t_max < 1) throw ConfigError("PI iteration cap must be >= 1");
  if (!(eps_accel > 0.0)) throw ConfigError("PI acceleration threshold must be > 0");
}

Matrix row_normalize(const SimilarityMatrix& s) {
  Matrix m = s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double sum = m.row(i).sum();
    if (!(sum > 0.0)) {
      throw NumericalError("object " + std::to_string(i) + " has zero total similarity; cannot row-normalise");
    }
    m.row(i) /= sum;
  }
  return m;
}

PowerIterationResult power_iteration(const Matrix& m, const Vector& v0, const PiConfig& cfg) {
  cfg.validate();
  if (m.rows() != m.cols() || m.cols() != v0.size()) {
    throw ConfigError("power_iteration: operator and start vector sizes disagree");
  }
  if (v0.cwiseAbs().maxCoeff() == 0.0) throw ConfigError("power_iteration: start vector is zero");

  const double threshold = cfg.eps_accel / static_cast<double>(m.rows());
  PowerIterationResult res;
  Vector v = v0;
  Vector delta_prev;
  for (int t = 0; t < cfg.t_max; ++t) {
    Vector next = m * v;
    const double norm1 = next.lpNorm<1>();
    if (!(norm1 > 0.0) || !std::isfinite(norm1)) {
      throw NumericalError("power iteration: |M v_t|_1 = 0 at step " + std::to_string(t));
    }
    next /= norm1;
    Vector delta = next - v;
    v = std::move(next);
    res.iterations = t + 1;
    if (t > 0 && (delta - delta_prev).lpNorm<Eigen::Infinity>() <= threshold) {
      res.truncated_early = true;
      break;
    }
    delta_prev = std::move(delta);
  }
  res.v = std::move(v);
  return res;
}

Vector random_start(Eigen::Index n, std::uint64_t seed, std::uint64_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32)};
  std::mt19937_64 rng(seq);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double s = v.sum();
  if (s > 0.0) v /= s;
  return v;
}

void normalize_columns(Matrix& x) {
  for (Eigen::Index q = 0; q < x.cols(); ++q) {
    const double norm = x.col(q).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalError("pseudo-eigenvector column " + std::to_string(q) + " is zero; cannot normalise");
    }
    x.col(q) /= norm;
  }
}

PseudoEigenMatrix generate_pseudo_eigenvectors(const Matrix& m, const PiConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = m.rows();

  PseudoEigenMatrix out;
  if (n < cfg.p) {
    out.warnings.push_back("p = " + std::to_string(cfg.p) + " exceeds n = " + std::to_string(n) +
                           "; pseudo-eigenvectors will be linearly dependent");
  }
  out.values.resize(cfg.p, n);
  out.iterations.assign(static_cast<std::size_t>(cfg.p), 0);

  std::vector<PowerIterationResult> runs(static_cast<std::size_t>(cfg.p));
  parallel_for(runs.size(), [&](std::size_t r) {
    runs[r] = power_iteration(m, random_start(n, cfg.seed, r), cfg);
  });
  for (std::size_t r = 0; r < runs.size(); ++r) {
    out.values.row(static_cast<Eigen::Index>(r)) = runs[r].v.transpose();
    out.iterations[r] = runs[r].iterations;
  }
  normalize_columns(out.values);
  return out;
}

}  // namespace smoothspec
