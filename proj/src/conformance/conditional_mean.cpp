#include "bmcheck/conformance/conditional_mean.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::conformance {

SampleMatrix conditional_mean_features(const SampleMatrix& x) {
  const Eigen::Index n = x.rows(), d = x.cols();
  const Eigen::Index p = 2 * d + d * (d - 1) / 2 + 1;
  SampleMatrix f(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < d; ++j) f(i, c++) = x(i, j);
    for (Eigen::Index j = 0; j < d; ++j) f(i, c++) = x(i, j) * x(i, j);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = j + 1; k < d; ++k) f(i, c++) = x(i, j) * x(i, k);
    f(i, c) = x.row(i).norm();
  }
  f.rowwise() -= f.colwise().mean();
  return f;
}

std::pair<DriftEstimate, TestReport> conditional_mean_test(
    const process::PathEnsemble& in, const process::PathEnsemble& out, double s,
    double t, const TestOptions& options) {
  if (in.num_paths() != out.num_paths())
    throw DimensionMismatch("conditional_mean_test: ensembles are not index-aligned");
  if (!(s < t)) throw InvalidArgument("conditional_mean_test: need s < t");
  const std::size_t ks = in.grid().require_index(s), kt = in.grid().require_index(t);
  if (out.grid().times() != in.grid().times())
    throw DimensionMismatch("conditional_mean_test: ensembles use different grids");

  const SampleMatrix feat = conditional_mean_features(in.marginal(ks));
  const SampleMatrix y = out.increments(ks, kt);
  const Eigen::Index n = feat.rows(), p = feat.cols() + 1, m = y.cols();
  if (n <= p) throw DegenerateDesign("conditional_mean_test: fewer paths than coefficients");

  Matrix design(n, p);
  design.col(0).setOnes();
  design.rightCols(p - 1) = feat;

  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < p)
    throw DegenerateDesign("conditional_mean_test: design matrix has rank " +
                           std::to_string(qr.rank()) + " < " + std::to_string(p));

  const Matrix xtx_inv = (design.transpose() * design).inverse();
  const Vector leverage = (design * xtx_inv).cwiseProduct(design).rowwise().sum();
  const Matrix beta = qr.solve(Matrix(y));
  const Matrix resid = Matrix(y) - design * beta;

  const double df = static_cast<double>(n - p);
  const boost::math::students_t dist(df);
  const double tests = static_cast<double>(m * (p - 1));
  const double dt = t - s;

  DriftEstimate drift{Vector(m), Vector(m)};
  double max_abs_t = 0, min_p = 1;
  nlohmann::ordered_json coefficients = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < m; ++c) {
    // HC3: (X'X)^-1 X' diag(e_i^2 / (1 - h_i)^2) X (X'X)^-1
    const Vector w = resid.col(c).array().square() / (1.0 - leverage.array()).square();
    const Matrix meat = design.transpose() * w.asDiagonal() * design;
    const Matrix cov = xtx_inv * meat * xtx_inv;
    drift.mu[c] = beta(0, c) / dt;
    drift.std_error[c] = std::sqrt(cov(0, 0)) / dt;
    Vector tstat(p - 1);
    for (Eigen::Index j = 1; j < p; ++j) {
      const double se = std::sqrt(cov(j, j));
      const double tv = se > 0 ? beta(j, c) / se : (beta(j, c) == 0 ? 0.0 : INFINITY);
      tstat[j - 1] = tv;
      const double raw = std::isfinite(tv)
                             ? 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(tv)))
                             : 0.0;
      min_p = std::min(min_p, std::min(1.0, raw * tests));
      max_abs_t = std::max(max_abs_t, std::abs(tv));
    }
    coefficients.push_back(json_vector(tstat));
  }

  nlohmann::ordered_json details;
  details["s"] = s;
  details["t"] = t;
  details["mu"] = json_vector(drift.mu);
  details["mu_std_error"] = json_vector(drift.std_error);
  details["features"] = {"x", "x^2", "x_i*x_j", "norm"};
  details["t_statistics"] = std::move(coefficients);
  details["bonferroni_tests"] = m * (p - 1);
  auto report = p_value_report("conditional_mean([" + format_number(s) + "," +
                                   format_number(t) + "])",
                               "conditional_mean", max_abs_t, min_p, options.alpha,
                               std::move(details));
  return {std::move(drift), std::move(report)};
}

}  // namespace bmcheck::conformance
