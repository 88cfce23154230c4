#pragma once

#include "smoothspec/coeff.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smoothspec {

// One random coefficient problem: unit-column X (p x n), a TKNN reachability
// matrix built from random planar points, and weights from a small grid.
struct LemmaInstance {
  Matrix x;
  ReachMatrix w;
  SecondOrderMatrix ww;
  SmoothParams params;
};

struct InstanceShape {
  int n_min = 5;
  int n_max = 30;
  int p_min = 2;
  int p_max = 10;
};

/// n in [n_min, n_max], p in [p_min, p_max], alpha1 in {0.01, 0.1, 1},
/// alpha2, alpha3 in {0, 0.5, 1}, alpha4 in {0, 1, 2}.
LemmaInstance random_lemma_instance(std::uint64_t seed, const InstanceShape& shape = {});

/// Makes objects i and j indistinguishable: column j of X becomes a copy of
/// column i and row/column j of W a copy of row/column i (with W_ij = W_jj = 0).
/// WW is recomputed.
void make_twins(LemmaInstance& inst, int i, int j);

struct LemmaSummary {
  int instances = 0;
  double max_residual = 0.0;           // closed-form stationarity
  double max_entrywise_deviation = 0.0;  // fixed-point form
  double max_rosc_gap = 0.0;           // smooth with alpha3 = 0 vs rosc
  std::size_t triples = 0;
  std::size_t corrected_violations = 0;
  std::size_t paper_violations = 0;
  double max_twin_gap = 0.0;           // grouping-effect limit on twinned pairs

  bool passed(double residual_tol = 1e-8, double rosc_tol = 1e-10, double twin_tol = 1e-9) const {
    return max_residual <= residual_tol && max_entrywise_deviation <= residual_tol && max_rosc_gap <= rosc_tol &&
           corrected_violations == 0 && max_twin_gap <= twin_tol;
  }
};

/// Runs the closed-form checks on `seeds` random instances (seed 0..seeds-1).
/// `bound_slack` is the absolute tolerance on lhs <= bound.
LemmaSummary verify_lemmas(int seeds, const InstanceShape& shape = {}, double bound_slack = 1e-12);

}  // namespace smoothspec
