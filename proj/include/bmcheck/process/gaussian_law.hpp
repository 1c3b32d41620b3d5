#pragma once

#include <cstddef>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::process {

/// Increment law of an n-dimensional Brownian motion: over [s, t] the
/// increment is N((t - s) drift, (t - s) covariance).
class GaussianLaw {
 public:
  /// covariance must be exactly symmetric and non-negative definite. When
  /// nonsingular is set the Cholesky factorization must succeed, otherwise
  /// NotPositiveDefinite is thrown.
  GaussianLaw(Vector drift, Matrix covariance, bool nonsingular = true);

  /// B_0 = 0 is a property of the path, not the law: drift 0, covariance I.
  static GaussianLaw standard(std::size_t n);

  std::size_t dimension() const { return static_cast<std::size_t>(drift_.size()); }
  const Vector& drift() const { return drift_; }
  const Matrix& covariance() const { return covariance_; }
  bool nonsingular() const { return nonsingular_; }

  /// Lower-triangular L with L L^T = covariance. For singular laws this is
  /// a symmetric square root instead, which is not triangular.
  const Matrix& factor() const { return factor_; }

 private:
  Vector drift_;
  Matrix covariance_;
  bool nonsingular_;
  Matrix factor_;
};

/// Transition density of the process from x to y over a time tau > 0.
/// Throws SingularCovariance for laws whose covariance is numerically
/// singular.
double transition_density(const GaussianLaw& law, double tau, const Vector& x,
                          const Vector& y);

}  // namespace bmcheck::process
