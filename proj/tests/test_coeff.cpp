#include "oracles.hpp"
#include "smoothspec/coeff.hpp"
#include "smoothspec/embedding.hpp"
#include "smoothspec/error.hpp"
#include "smoothspec/lemma_check.hpp"

#include <doctest.h>

#include <random>

using namespace smoothspec;

namespace {

struct Instance {
  Matrix x;
  ReachMatrix w;
  SecondOrderMatrix ww;
};

Instance random_instance(std::uint64_t seed, int n, int p, int knn = 2,
                         ReachDiagonal diag = ReachDiagonal::zero) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Instance inst;
  inst.x.resize(p, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < p; ++r) inst.x(r, c) = normal(rng);
  normalize_columns(inst.x);
  FeatureMatrix pts(n, 2);
  for (int i = 0; i < n; ++i) pts.row(i) << normal(rng), normal(rng);
  inst.w = reachability(mutual_knn(pts, knn), diag);
  inst.ww = second_order(inst.w);
  return inst;
}

Matrix oracle_solution(const Instance& inst, const SmoothParams& a) {
  const Eigen::Index n = inst.x.cols();
  Matrix z(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    oracle::ColumnProblem prob{&inst.x,
                               inst.x.col(p),
                               inst.w.values.col(p).cast<double>(),
                               inst.ww.values.col(p).cast<double>(),
                               a.alpha1,
                               a.alpha2,
                               a.alpha3,
                               a.alpha4};
    z.col(p) = oracle::minimize_column(prob, 1e-10);
  }
  return z;
}

Instance scalar_instance() {
  Instance inst;
  inst.x = Matrix::Ones(1, 1);
  inst.w.values = IntMatrix::Zero(1, 1);
  inst.ww.values = IntMatrix::Zero(1, 1);
  return inst;
}

}  // namespace

TEST_CASE("scalar closed forms") {
  const Instance s = scalar_instance();
  CHECK(solve_rosc(s.x, s.w, 1.0, 1.0)(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const SmoothParams a{1.0, 1.0, 1.0, 2.0};
  const CoeffMatrix z = solve_smooth(s.x, s.w, s.ww, a);
  CHECK(z(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(stationarity_residual(z, s.x, s.w, s.ww, a)(0, 0) <= 1e-15);
  CHECK(entrywise_solution_check(z, s.x, s.w, s.ww, a));
  // 0.25 = (1 * (1 - 0.25) + (1 - 2) * 0 + 1 * 0) / 3
  CHECK(entrywise_deviation(z, s.x, s.w, s.ww, a) <= 1e-15);
}

TEST_CASE("rosc without the reachability weight ignores W") {
  const Instance inst = random_instance(3, 9, 3);
  ReachMatrix other{IntMatrix::Ones(9, 9)};
  const CoeffMatrix z1 = solve_rosc(inst.x, inst.w, 0.2, 0.0);
  const CoeffMatrix z2 = solve_rosc(inst.x, other, 0.2, 0.0);
  CHECK((z1 - z2).cwiseAbs().maxCoeff() == 0.0);

  const Matrix gram = inst.x.transpose() * inst.x;
  const Matrix explicit_inverse = (gram + 0.2 * Matrix::Identity(9, 9)).inverse() * gram;
  CHECK((z1 - explicit_inverse).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("rosc matches a per-column gradient-descent minimiser") {
  const Instance inst = random_instance(8, 8, 3);
  const SmoothParams a{0.3, 0.7, 0.0, 0.0};
  const CoeffMatrix z = solve_rosc(inst.x, inst.w, a.alpha1, a.alpha2);
  CHECK((z - oracle_solution(inst, a)).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("smooth matches a per-column gradient-descent minimiser") {
  const Instance inst = random_instance(15, 10, 4, 3);
  const SmoothParams a{0.1, 1.0, 0.5, 0.3};
  const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, a);
  CHECK((z - oracle_solution(inst, a)).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("smooth reduces to rosc when alpha3 is zero") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(seed, 12, 4);
    for (double a4 : {0.0, 1.0, 7.5}) {
      const CoeffMatrix zs = solve_smooth(inst.x, inst.w, inst.ww, {0.05, 0.4, 0.0, a4});
      const CoeffMatrix zr = solve_rosc(inst.x, inst.w, 0.05, 0.4);
      CHECK((zs - zr).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("closed form is stationary") {
  const Instance inst = random_instance(10, 10, 4);
  const SmoothParams a{0.1, 1.0, 0.5, 0.3};
  const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, a);
  CHECK(stationarity_residual(z, inst.x, inst.w, inst.ww, a).maxCoeff() <= 1e-8);
  CHECK(entrywise_solution_check(z, inst.x, inst.w, inst.ww, a));

  SUBCASE("negative net reachability weight") {
    const SmoothParams neg{0.01, 0.1, 1.0, 2.0};
    REQUIRE(neg.reach_weight() < 0.0);
    const CoeffMatrix zn = solve_smooth(inst.x, inst.w, inst.ww, neg);
    CHECK(stationarity_residual(zn, inst.x, inst.w, inst.ww, neg).maxCoeff() <= 1e-8);
  }
}

TEST_CASE("stationarity residual detects a perturbation") {
  const Instance inst = random_instance(20, 10, 4);
  const SmoothParams a{0.1, 1.0, 0.5, 0.3};
  CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, a);
  z(3, 6) += 0.1;
  const Matrix r = stationarity_residual(z, inst.x, inst.w, inst.ww, a);
  // dJ/dZ_36 moves by 2 (|x_3|^2 + a1 + a2 + a3) * 0.1 with |x_3| = 1
  CHECK(r(3, 6) >= 2.0 * a.alpha1 * 0.1);
  CHECK(r(3, 6) == doctest::Approx(0.2 * (1.0 + a.shift())).epsilon(1e-9));
  CHECK_FALSE(entrywise_solution_check(z, inst.x, inst.w, inst.ww, a));
}

TEST_CASE("zero coefficients fail the fixed-point check") {
  const Instance inst = random_instance(21, 10, 4);
  const SmoothParams a{0.1, 1.0, 0.5, 0.3};
  CHECK_FALSE(entrywise_solution_check(Matrix::Zero(10, 10), inst.x, inst.w, inst.ww, a));
}

TEST_CASE("coefficients need not be symmetric") {
  const Instance inst = random_instance(22, 10, 4);
  const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, {0.1, 1.0, 0.5, 0.3});
  CHECK((z - z.transpose()).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("grouping bound report") {
  const Instance inst = random_instance(31, 8, 4, 2);
  const SmoothParams a{0.5, 1.0, 0.5, 0.5};
  const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, a);
  const auto rows = grouping_bound_report(z, inst.x, inst.w, inst.ww, a);
  REQUIRE(rows.size() == 8u * 8u * 8u);
  for (const auto& row : rows) {
    CHECK(row.lhs <= row.bound_corrected + 1e-12);
    if (row.i == row.j) {
      CHECK(row.lhs == 0.0);
      CHECK(row.bound_paper >= 0.0);
    }
  }

  SUBCASE("constants coincide without the smoothness term") {
    const SmoothParams flat{0.5, 1.0, 0.0, 0.0};
    const CoeffMatrix zf = solve_smooth(inst.x, inst.w, inst.ww, flat);
    for (const auto& row : grouping_bound_report(zf, inst.x, inst.w, inst.ww, flat)) {
      CHECK(row.bound_corrected == row.bound_paper);
      CHECK(row.lhs <= row.bound_corrected + 1e-12);
    }
  }

  SUBCASE("sampling when the triple count is large") {
    BoundReportOptions opts;
    opts.max_triples = 100;
    opts.seed = 3;
    const auto sample = grouping_bound_report(z, inst.x, inst.w, inst.ww, a, opts);
    CHECK(sample.size() == 100);
    const auto again = grouping_bound_report(z, inst.x, inst.w, inst.ww, a, opts);
    CHECK(sample.front().i == again.front().i);
    CHECK(sample.back().p == again.back().p);
  }

  SUBCASE("non-normalised columns are rejected") {
    Matrix scaled = 2.0 * inst.x;
    CHECK_THROWS_AS(grouping_bound_report(z, scaled, inst.w, inst.ww, a), ConfigError);
  }
}

TEST_CASE("grouping-effect probe") {
  LemmaInstance inst;
  {
    const Instance base = random_instance(41, 12, 4, 2);
    inst.x = base.x;
    inst.w = base.w;
    inst.ww = base.ww;
    inst.params = {0.1, 0.5, 1.0, 2.0};
  }
  CHECK(grouping_effect_probe(inst.x, inst.w, inst.ww, inst.params, 4, 4) == 0.0);

  make_twins(inst, 2, 9);
  CHECK(inst.w.values.row(2) == inst.w.values.row(9));
  CHECK(grouping_effect_probe(inst.x, inst.w, inst.ww, inst.params, 2, 9) <= 1e-9);

  SUBCASE("orthogonal embeddings stay within the corrected bound") {
    Instance o = random_instance(42, 6, 3, 1);
    o.x.col(0) << 1, 0, 0;
    o.x.col(1) << 0, 1, 0;
    const SmoothParams a{0.2, 0.3, 0.4, 1.0};
    const CoeffMatrix z = solve_smooth(o.x, o.w, o.ww, a);
    const double probe = grouping_effect_probe(o.x, o.w, o.ww, a, 0, 1);
    double worst_bound = 0.0;
    for (const auto& row : grouping_bound_report(z, o.x, o.w, o.ww, a))
      if (row.i == 0 && row.j == 1) worst_bound = std::max(worst_bound, row.bound_corrected);
    CHECK(probe <= worst_bound);
  }
}

TEST_CASE("identical embeddings inside one TKNN component differ only at their own columns") {
  // Zero-diagonal W: rows i and j agree except W_ii = 0 vs W_ji = 1, so the
  // fixed-point form gives Z_ii - Z_ji = (a3 - a2 + a3 a4) / (a1 + a2 + a3).
  FeatureMatrix pts(6, 1);
  pts << 0.0, 1.0, 5.0, 6.0, 10.0, 11.0;
  Instance inst;
  inst.w = reachability(mutual_knn(pts, 1));
  for (int i = 0; i < 6; ++i) REQUIRE(inst.w.values.row(i).sum() >= 1);
  inst.ww = second_order(inst.w);
  REQUIRE(inst.w.values(0, 1) == 1);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  inst.x.resize(3, 6);
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 3; ++r) inst.x(r, c) = normal(rng);
  inst.x.col(1) = inst.x.col(0);
  normalize_columns(inst.x);

  const SmoothParams a{0.1, 0.5, 1.0, 2.0};
  const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, a);
  const double expected = (a.alpha3 - a.alpha2 + a.alpha3 * a.alpha4) / a.shift();
  CHECK(z(0, 0) - z(1, 0) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(z(0, 1) - z(1, 1) == doctest::Approx(-expected).epsilon(1e-9));
  for (int p = 2; p < 6; ++p) CHECK(std::abs(z(0, p) - z(1, p)) <= 1e-9);

  SUBCASE("unit diagonal makes the rows identical") {
    Instance unit = inst;
    unit.w = reachability(mutual_knn(pts, 1), ReachDiagonal::one);
    unit.ww = second_order(unit.w);
    CHECK(grouping_effect_probe(unit.x, unit.w, unit.ww, a, 0, 1) <= 1e-9);
  }
}

TEST_CASE("coefficient solvers validate their inputs") {
  const Instance inst = random_instance(50, 6, 2);
  CHECK_THROWS_AS(solve_rosc(inst.x, inst.w, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(solve_smooth(inst.x, inst.w, inst.ww, {-1.0, 0.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(solve_smooth(inst.x, inst.w, inst.ww, {1.0, -0.1, 0.0, 0.0}), ConfigError);
  ReachMatrix small{IntMatrix::Zero(5, 5)};
  CHECK_THROWS_AS(solve_rosc(inst.x, small, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(grouping_effect_probe(inst.x, inst.w, inst.ww, {}, 0, 6), ConfigError);
}

TEST_CASE("verify_lemmas passes on a handful of seeds") {
  const LemmaSummary s = verify_lemmas(8);
  CHECK(s.instances == 8);
  CHECK(s.max_residual <= 1e-8);
  CHECK(s.max_rosc_gap <= 1e-10);
  CHECK(s.corrected_violations == 0);
  CHECK(s.max_twin_gap <= 1e-9);
  CHECK(s.passed());
}
