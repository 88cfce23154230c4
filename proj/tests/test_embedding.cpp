#include "smoothspec/data_sim.hpp"
#include "smoothspec/embedding.hpp"
#include "smoothspec/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

using namespace smoothspec;

namespace {

PiConfig exact_steps(int t) {
  PiConfig cfg;
  cfg.t_max = t;
  cfg.eps_accel = 1e-300;
  return cfg;
}

Matrix random_stochastic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = i == j ? 0.0 : u(rng);
  return row_normalize(s);
}

}  // namespace

TEST_CASE("row_normalize") {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  CHECK(row_normalize(s) == s);
  Matrix s2 = 2.0 * s;
  CHECK(row_normalize(s2) == s);

  Matrix isolated(3, 3);
  isolated << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  try {
    row_normalize(isolated);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("object 2") != std::string::npos);
  }
}

TEST_CASE("power iteration on diag(2,1) follows the closed form") {
  Matrix m = Vector::Ones(2).asDiagonal();
  m(0, 0) = 2.0;
  const Vector v0 = Vector::Ones(2);

  const auto t1 = power_iteration(m, v0, exact_steps(1));
  CHECK(t1.iterations == 1);
  CHECK(t1.v(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(t1.v(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto t2 = power_iteration(m, v0, exact_steps(2));
  CHECK(t2.v(0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(t2.v(1) == doctest::Approx(0.2).epsilon(1e-15));

  for (int t = 1; t <= 40; ++t) {
    const auto r = power_iteration(m, v0, exact_steps(t));
    const double p = std::ldexp(1.0, t);
    CHECK(std::abs(r.v(0) - p / (p + 1.0)) <= 1e-12);
    CHECK(std::abs(r.v(1) - 1.0 / (p + 1.0)) <= 1e-12);
  }
}

TEST_CASE("power iteration fixed points") {
  std::mt19937_64 rng(1);
  const Matrix m = random_stochastic(rng, 6);
  const Vector uniform = Vector::Constant(6, 1.0 / 6.0);
  const auto r = power_iteration(m, uniform, exact_steps(1));
  CHECK((r.v - uniform).cwiseAbs().maxCoeff() <= 1e-12);

  Vector v0(3);
  v0 << 0.2, 0.5, 0.3;
  const auto id = power_iteration(Matrix::Identity(3, 3), v0, PiConfig{});
  CHECK(id.v == v0);
  CHECK(id.truncated_early);
  CHECK(id.iterations == 2);
}

TEST_CASE("power iteration keeps unit L1 norm at every step") {
  std::mt19937_64 rng(2);
  const Matrix m = random_stochastic(rng, 8);
  const Vector v0 = random_start(8, 3, 0);
  for (int t = 1; t <= 25; ++t) {
    CHECK(power_iteration(m, v0, exact_steps(t)).v.lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("power iteration errors") {
  Matrix nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  Vector v0(2);
  v0 << 1, 0;
  CHECK_THROWS_AS(power_iteration(nilpotent, v0, PiConfig{}), NumericalError);
  CHECK_THROWS_AS(power_iteration(Matrix::Identity(2, 2), Vector::Zero(2), PiConfig{}), ConfigError);
  PiConfig bad;
  bad.eps_accel = 0.0;
  CHECK_THROWS_AS(power_iteration(Matrix::Identity(2, 2), Vector::Ones(2), bad), ConfigError);
}

TEST_CASE("random_start is seeded, positive and L1-normalised") {
  const Vector a = random_start(50, 7, 0);
  CHECK(a == random_start(50, 7, 0));
  CHECK(a != random_start(50, 7, 1));
  CHECK(a != random_start(50, 8, 0));
  CHECK(a.minCoeff() >= 0.0);
  CHECK(a.sum() == doctest::Approx(1.0));
}

TEST_CASE("pseudo-eigenvectors on diag(2,1)") {
  Matrix m = Vector::Ones(2).asDiagonal();
  m(0, 0) = 2.0;
  PiConfig cfg;
  cfg.p = 1;
  const auto pe = generate_pseudo_eigenvectors(m, cfg);
  REQUIRE(pe.values.rows() == 1);
  CHECK(std::abs(pe.values(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(pe.values(0, 1)) == doctest::Approx(1.0));
  CHECK(pe.iterations.size() == 1);
}

TEST_CASE("pseudo-eigenvector generation is deterministic and diverse") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FeatureMatrix pts(10, 2);
  for (int i = 0; i < 10; ++i) pts.row(i) << u(rng), u(rng);
  const Matrix m = row_normalize(zp_similarity(pts, 3));
  PiConfig cfg;
  cfg.p = 2;
  cfg.seed = 99;
  const auto a = generate_pseudo_eigenvectors(m, cfg);
  const auto b = generate_pseudo_eigenvectors(m, cfg);
  CHECK(a.values == b.values);
  CHECK(a.iterations == b.iterations);

  // angle between the two rows, via the chord of their unit directions
  const Vector r0 = a.values.row(0).transpose().normalized();
  const Vector r1 = a.values.row(1).transpose().normalized();
  const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * std::min((r0 - r1).norm(), (r0 + r1).norm())));
  CHECK(angle > 1e-6);

  for (Eigen::Index q = 0; q < a.values.cols(); ++q) CHECK(std::abs(a.values.col(q).norm() - 1.0) <= 1e-12);
  CHECK(a.values.allFinite());
}

TEST_CASE("p larger than n warns") {
  std::mt19937_64 rng(4);
  PiConfig cfg;
  cfg.p = 5;
  const auto pe = generate_pseudo_eigenvectors(random_stochastic(rng, 3), cfg);
  CHECK(pe.warnings.size() == 1);
}

TEST_CASE("truncated iterates are near-constant within well-separated groups") {
  const auto ds = generate_multiscale({{{0.0, 0.0}, {0.3}, 40}, {{6.0, 0.0}, {0.3}, 40}}, 12);
  const Matrix m = row_normalize(zp_similarity(ds.features, 7));
  const auto r = power_iteration(m, random_start(80, 5, 0), PiConfig{});
  CHECK(r.truncated_early);

  const Vector a = r.v.head(40), b = r.v.tail(40);
  const double mean_a = a.mean(), mean_b = b.mean(), mean = r.v.mean();
  const double intra = 0.5 * ((a.array() - mean_a).square().mean() + (b.array() - mean_b).square().mean());
  const double inter = 0.5 * ((mean_a - mean) * (mean_a - mean) + (mean_b - mean) * (mean_b - mean));
  CHECK(intra < inter);
}

TEST_CASE("normalize_columns rejects a zero column") {
  Matrix x(2, 2);
  x << 3, 0, 4, 0;
  CHECK_THROWS_AS(normalize_columns(x), NumericalError);
  Matrix y(2, 1);
  y << 3, 4;
  normalize_columns(y);
  CHECK(y(0, 0) == doctest::Approx(0.6));
}
