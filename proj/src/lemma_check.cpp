#include "smoothspec/lemma_check.hpp"

#include "smoothspec/embedding.hpp"
#include "smoothspec/error.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace smoothspec {

LemmaInstance random_lemma_instance(std::uint64_t seed, const InstanceShape& shape) {
  if (shape.n_min < 3 || shape.n_max < shape.n_min || shape.p_min < 1 || shape.p_max < shape.p_min) {
    throw ConfigError("invalid lemma instance shape");
  }
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  static constexpr std::array<double, 3> kAlpha1{0.01, 0.1, 1.0};
  static constexpr std::array<double, 3> kAlpha23{0.0, 0.5, 1.0};
  static constexpr std::array<double, 3> kAlpha4{0.0, 1.0, 2.0};

  const int n = uniform_int(shape.n_min, shape.n_max);
  const int p = uniform_int(shape.p_min, shape.p_max);

  LemmaInstance inst;
  inst.params.alpha1 = kAlpha1[uniform_int(0, 2)];
  inst.params.alpha2 = kAlpha23[uniform_int(0, 2)];
  inst.params.alpha3 = kAlpha23[uniform_int(0, 2)];
  inst.params.alpha4 = kAlpha4[uniform_int(0, 2)];

  std::normal_distribution<double> normal(0.0, 1.0);
  inst.x.resize(p, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < p; ++r) inst.x(r, c) = normal(rng);
  normalize_columns(inst.x);

  FeatureMatrix points(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    points(i, 0) = normal(rng);
    points(i, 1) = normal(rng);
  }
  const int k = uniform_int(1, std::min(4, n - 1));
  inst.w = reachability(mutual_knn(points, k));
  inst.ww = second_order(inst.w);
  return inst;
}

void make_twins(LemmaInstance& inst, int i, int j) {
  const Eigen::Index n = inst.x.cols();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("make_twins needs two distinct indices");
  inst.x.col(j) = inst.x.col(i);
  IntMatrix& w = inst.w.values;
  w.row(j) = w.row(i);
  w.col(j) = w.col(i);
  w(i, j) = w(j, i) = 0;
  w(i, i) = w(j, j) = 0;
  inst.ww = second_order(inst.w);
}

LemmaSummary verify_lemmas(int seeds, const InstanceShape& shape, double bound_slack) {
  if (seeds < 1) throw ConfigError("verify_lemmas needs at least one seed");
  LemmaSummary s;
  for (int seed = 0; seed < seeds; ++seed) {
    LemmaInstance inst = random_lemma_instance(static_cast<std::uint64_t>(seed), shape);
    const CoeffMatrix z = solve_smooth(inst.x, inst.w, inst.ww, inst.params);

    s.max_residual = std::max(s.max_residual, stationarity_residual(z, inst.x, inst.w, inst.ww, inst.params).maxCoeff());
    s.max_entrywise_deviation =
        std::max(s.max_entrywise_deviation, entrywise_deviation(z, inst.x, inst.w, inst.ww, inst.params));

    SmoothParams flat = inst.params;
    flat.alpha3 = 0.0;
    const CoeffMatrix z_flat = solve_smooth(inst.x, inst.w, inst.ww, flat);
    const CoeffMatrix z_rosc = solve_rosc(inst.x, inst.w, flat.alpha1, flat.alpha2);
    s.max_rosc_gap = std::max(s.max_rosc_gap, (z_flat - z_rosc).cwiseAbs().maxCoeff());

    BoundReportOptions opts;
    opts.seed = static_cast<std::uint64_t>(seed);
    for (const auto& row : grouping_bound_report(z, inst.x, inst.w, inst.ww, inst.params, opts)) {
      ++s.triples;
      if (row.lhs > row.bound_corrected + bound_slack) ++s.corrected_violations;
      if (row.lhs > row.bound_paper + bound_slack) ++s.paper_violations;
    }

    const int n = static_cast<int>(inst.x.cols());
    make_twins(inst, 0, n - 1);
    s.max_twin_gap = std::max(s.max_twin_gap, grouping_effect_probe(inst.x, inst.w, inst.ww, inst.params, 0, n - 1));
    ++s.instances;
  }
  return s;
}

}  // namespace smoothspec
