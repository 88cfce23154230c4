#include "smoothspec/coeff.hpp"

#include "smoothspec/error.hpp"

#include <Eigen/Cholesky>

#include <cassert>
#include <cmath>
#include <random>
#include <string>

namespace smoothspec {

namespace {

void check_dims(const Matrix& x, const IntMatrix& w, const IntMatrix* ww) {
  const Eigen::Index n = x.cols();
  if (w.rows() != n || w.cols() != n) {
    throw ConfigError("reachability matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                      " but X has " + std::to_string(n) + " columns");
  }
  if (ww && (ww->rows() != n || ww->cols() != n)) {
    throw ConfigError("second-order matrix dimensions do not match X");
  }
}

CoeffMatrix solve_shifted(const Matrix& x, double shift, const Matrix& rhs) {
  Matrix gram = x.transpose() * x;
  gram.diagonal().array() += shift;
  const Eigen::LLT<Matrix> llt(gram);
  // shift > 0 makes the system positive definite
  assert(llt.info() == Eigen::Success);
  if (llt.info() != Eigen::Success) throw NumericalError("Cholesky factorisation failed");
  return llt.solve(rhs);
}

}  // namespace

void SmoothParams::validate() const {
  if (!(alpha1 > 0.0) || !std::isfinite(alpha1)) throw ConfigError("alpha1 must be > 0");
  if (!(alpha2 >= 0.0) || !std::isfinite(alpha2)) throw ConfigError("alpha2 must be >= 0");
  if (!(alpha3 >= 0.0) || !std::isfinite(alpha3)) throw ConfigError("alpha3 must be >= 0");
  if (!(alpha4 >= 0.0) || !std::isfinite(alpha4)) throw ConfigError("alpha4 must be >= 0");
}

CoeffMatrix solve_rosc(const Matrix& x, const ReachMatrix& w, double alpha1, double alpha2) {
  SmoothParams{alpha1, alpha2, 0.0, 0.0}.validate();
  check_dims(x, w.values, nullptr);
  const Matrix gram = x.transpose() * x;
  return solve_shifted(x, alpha1 + alpha2, gram + alpha2 * w.values.cast<double>());
}

CoeffMatrix solve_smooth(const Matrix& x, const ReachMatrix& w, const SecondOrderMatrix& ww,
                         const SmoothParams& params) {
  params.validate();
  check_dims(x, w.values, &ww.values);
  assert(ww.values == w.values * w.values);
  const Matrix gram = x.transpose() * x;
  const Matrix rhs = gram + params.reach_weight() * w.values.cast<double>() + params.alpha3 * ww.values.cast<double>();
  return solve_shifted(x, params.shift(), rhs);
}

Matrix stationarity_residual(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                             const SecondOrderMatrix& ww, const SmoothParams& params) {
  check_dims(x, w.values, &ww.values);
  const Matrix wd = w.values.cast<double>();
  const Matrix wwd = ww.values.cast<double>();
  const Matrix grad = -2.0 * x.transpose() * (x - x * z) + 2.0 * params.alpha1 * z +
                      2.0 * params.alpha2 * (z - wd) + 2.0 * params.alpha3 * (z - wwd + params.alpha4 * wd);
  return grad.cwiseAbs();
}

double entrywise_deviation(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                           const SecondOrderMatrix& ww, const SmoothParams& params) {
  check_dims(x, w.values, &ww.values);
  const Matrix fixed = (x.transpose() * (x - x * z) + params.reach_weight() * w.values.cast<double>() +
                        params.alpha3 * ww.values.cast<double>()) /
                       params.shift();
  return (z - fixed).cwiseAbs().maxCoeff();
}

bool entrywise_solution_check(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                              const SecondOrderMatrix& ww, const SmoothParams& params, double tol) {
  return entrywise_deviation(z, x, w, ww, params) <= tol;
}

std::vector<BoundRow> grouping_bound_report(const CoeffMatrix& z, const Matrix& x, const ReachMatrix& w,
                                            const SecondOrderMatrix& ww, const SmoothParams& params,
                                            const BoundReportOptions& opts) {
  params.validate();
  check_dims(x, w.values, &ww.values);
  const int n = static_cast<int>(x.cols());
  for (int q = 0; q < n; ++q) {
    if (std::abs(x.col(q).norm() - 1.0) > opts.column_norm_tol) {
      throw ConfigError("column " + std::to_string(q) + " of X is not unit norm");
    }
  }

  const Matrix wd = w.values.cast<double>();
  const Matrix wwd = ww.values.cast<double>();
  Matrix dist(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist(i, j) = (x.col(i) - x.col(j)).norm();
  const double a2 = params.alpha2, a3 = params.alpha3, a4 = params.alpha4;

  Vector c_corrected(n), c_paper(n);
  for (int p = 0; p < n; ++p) {
    const double w_sq = wd.col(p).squaredNorm();
    c_corrected(p) = std::sqrt(1.0 + a2 * w_sq + a3 * (a4 * wd.col(p) - wwd.col(p)).squaredNorm());
    c_paper(p) = std::sqrt(1.0 + (a2 + a3 * a4) * w_sq + a3 * wwd.col(p).squaredNorm());
  }

  const double shift = params.shift();
  const double reach = std::abs(params.reach_weight());
  auto row_for = [&](int i, int j, int p) {
    BoundRow row{i, j, p, std::abs(z(i, p) - z(j, p)), 0.0, 0.0};
    // sqrt(2 (1 - r)) for unit columns, taken as a norm to avoid cancellation near r = 1
    const double d = dist(i, j);
    const double rest = reach * std::abs(wd(i, p) - wd(j, p)) + a3 * std::abs(wwd(i, p) - wwd(j, p));
    row.bound_corrected = (c_corrected(p) * d + rest) / shift;
    row.bound_paper = (c_paper(p) * d + rest) / shift;
    return row;
  };

  std::vector<BoundRow> rows;
  const double total = static_cast<double>(n) * n * n;
  if (total <= static_cast<double>(opts.max_triples)) {
    rows.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int p = 0; p < n; ++p) rows.push_back(row_for(i, j, p));
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    rows.reserve(opts.max_triples);
    for (std::size_t t = 0; t < opts.max_triples; ++t) {
      const int i = pick(rng);
      const int j = pick(rng);
      const int p = pick(rng);
      rows.push_back(row_for(i, j, p));
    }
  }
  return rows;
}

double grouping_effect_probe(const Matrix& x, const ReachMatrix& w, const SecondOrderMatrix& ww,
                             const SmoothParams& params, int i, int j) {
  const Eigen::Index n = x.cols();
  if (i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("grouping probe index out of range");
  if (i == j) return 0.0;
  const CoeffMatrix z = solve_smooth(x, w, ww, params);
  return (z.row(i) - z.row(j)).cwiseAbs().maxCoeff();
}

}  // namespace smoothspec
