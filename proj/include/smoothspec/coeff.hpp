#pragma once

#include "smoothspec/tknn.hpp"
#include "smoothspec/types.hpp"

#include <cstdint>
#include <vector>

namespace smoothspec {

// n x n self-representation coefficients; column p represents object p.
using CoeffMatrix = Matrix;

// Weights of the smoothness-regularised objective
//   |X - XZ|^2 + a1 |Z|^2 + a2 |Z - W|^2 + a3 |Z - WW + a4 W|^2.
struct SmoothParams {
  double alpha1 = 0.01;
  double alpha2 = 0.01;
  double alpha3 = 0.01;
  double alpha4 = 1.0;

  void validate() const;

  // Diagonal shift of the normal equations.
  double shift() const { return alpha1 + alpha2 + alpha3; }
  // Net weight on W in the right-hand side; may be negative.
  double reach_weight() const { return alpha2 - alpha3 * alpha4; }
};

/// Z = (X'X + (a1 + a2) I)^-1 (X'X + a2 W).
CoeffMatrix solve_rosc(const Matrix& x, const ReachMatrix& w, double alpha1, double alpha2);

/// Z = (X'X + (a1 + a2 + a3) I)^-1 (X'X + (a2 - a3 a4) W + a3 WW).
/// One Cholesky factorisation shared by all n right-hand sides.
CoeffMatrix solve_smooth(const Matrix& x, const ReachMatrix& w, const SecondOrderMatrix& ww,
                         const SmoothParams& params);

/// |dJ/dZ_ip| for every entry, i.e. the absolute gradient of the objective at Z.
Matrix stationarity_residual(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                             const SecondOrderMatrix& ww, const SmoothParams& params);

/// Largest |Z_ip - F_ip(Z)| where F is the fixed-point form
///   (x_i'(x_p - X z_p) + (a2 - a3 a4) W_ip + a3 WW_ip) / (a1 + a2 + a3).
double entrywise_deviation(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                           const SecondOrderMatrix& ww, const SmoothParams& params);

bool entrywise_solution_check(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                              const SecondOrderMatrix& ww, const SmoothParams& params, double tol = 1e-8);

struct BoundRow {
  int i = 0;
  int j = 0;
  int p = 0;
  double lhs = 0.0;              // |Z_ip - Z_jp|
  double bound_corrected = 0.0;  // constant sqrt(J(0))
  double bound_paper = 0.0;      // constant sqrt(1 + (a2 + a3 a4)|w_p|^2 + a3 |ww_p|^2)
};

struct BoundReportOptions {
  std::size_t max_triples = 1'000'000;  // enumerate all n^3 triples up to this many, else sample
  std::uint64_t seed = 0;
  double column_norm_tol = 1e-10;
};

/// Pairwise grouping bound on |Z_ip - Z_jp| via the embedding correlation
/// r = x_i'x_j. Requires unit-norm columns of X.
std::vector<BoundRow> grouping_bound_report(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                                            const SecondOrderMatrix& ww, const SmoothParams& params,
                                            const BoundReportOptions& opts = {});

/// max_p |Z*_ip - Z*_jp| for the smooth solution on this instance.
double grouping_effect_probe(const Matrix& x, const ReachMatrix& w, const SecondOrderMatrix& ww,
                             const SmoothParams& params, int i, int j);

}  // namespace smoothspec
