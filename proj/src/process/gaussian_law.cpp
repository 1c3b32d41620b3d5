#include "bmcheck/process/gaussian_law.hpp"

#include <cmath>
#include <numbers>

#include "bmcheck/common/errors.hpp"

namespace bmcheck::process {

GaussianLaw::GaussianLaw(Vector drift, Matrix covariance, bool nonsingular)
    : drift_(std::move(drift)),
      covariance_(std::move(covariance)),
      nonsingular_(nonsingular) {
  const auto n = drift_.size();
  if (n < 1) throw InvalidArgument("GaussianLaw: dimension must be >= 1");
  if (covariance_.rows() != n || covariance_.cols() != n)
    throw DimensionMismatch("GaussianLaw: covariance must be n x n");
  if (!drift_.allFinite() || !covariance_.allFinite())
    throw InvalidArgument("GaussianLaw: entries must be finite");
  if (max_asymmetry(covariance_) != 0.0)
    throw InvalidArgument("GaussianLaw: covariance is not symmetric");

  if (nonsingular_) {
    factor_ = cholesky(covariance_);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance_);
  const double scale = 1.0 + covariance_.cwiseAbs().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale)
    throw NotPositiveDefinite("GaussianLaw: covariance is indefinite");
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  factor_ = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

GaussianLaw GaussianLaw::standard(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  if (k < 1) throw InvalidArgument("GaussianLaw: dimension must be >= 1");
  return GaussianLaw(Vector::Zero(k), Matrix::Identity(k, k));
}

double transition_density(const GaussianLaw& law, double tau, const Vector& x,
                          const Vector& y) {
  if (!(tau > 0.0)) throw InvalidArgument("transition_density: tau must be > 0");
  const auto n = static_cast<Eigen::Index>(law.dimension());
  if (x.size() != n || y.size() != n)
    throw DimensionMismatch("transition_density: point dimension mismatch");

  Matrix l;
  try {
    l = law.nonsingular() ? law.factor() : cholesky(law.covariance());
  } catch (const NotPositiveDefinite& e) {
    throw SingularCovariance(std::string("transition_density: ") + e.what());
  }
  // <r, A^{-1} r> = |L^{-1} r|^2 and det(A) = prod L_ii^2.
  const Vector r = y - law.drift() * tau - x;
  const Vector w = l.triangularView<Eigen::Lower>().solve(r);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) log_det += 2.0 * std::log(l(i, i));
  const double log_density = -0.5 * static_cast<double>(n) *
                                 std::log(2.0 * std::numbers::pi * tau) -
                             0.5 * log_det - w.squaredNorm() / (2.0 * tau);
  return std::exp(log_density);
}

}  // namespace bmcheck::process
