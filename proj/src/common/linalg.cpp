#include "bmcheck/common/linalg.hpp"

#include <cmath>
#include <sstream>

#include "bmcheck/common/errors.hpp"

namespace bmcheck {

double max_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

Matrix cholesky(const Matrix& a, double relative_pivot_tolerance) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidArgument("cholesky: matrix must be square and non-empty");
  if (max_asymmetry(a) != 0.0)
    throw InvalidArgument("cholesky: matrix is not symmetric");

  const Eigen::Index n = a.rows();
  const double tolerance =
      relative_pivot_tolerance * std::max(0.0, a.diagonal().maxCoeff());
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > tolerance)) {
      std::ostringstream msg;
      msg << "cholesky: pivot " << j << " = " << pivot
          << " is not above tolerance " << tolerance;
      throw NotPositiveDefinite(msg.str());
    }
    const double diag = std::sqrt(pivot);
    l(j, j) = diag;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / diag;
    }
  }
  return l;
}

Vector sample_mean(const SampleMatrix& x) {
  return x.colwise().mean().transpose();
}

Matrix sample_covariance(const SampleMatrix& x) {
  const Eigen::Index n = x.rows();
  const Vector mean = sample_mean(x);
  const SampleMatrix centered = x.rowwise() - mean.transpose();
  Matrix cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  // Exact symmetry, so the result is a valid cholesky() input.
  return (cov + cov.transpose()) * 0.5;
}

}  // namespace bmcheck
