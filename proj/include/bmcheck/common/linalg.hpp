#pragma once

#include <Eigen/Dense>

namespace bmcheck {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// N x d sample array, one observation per row.
using SampleMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Relative pivot tolerance for cholesky(): a pivot at or below
/// kCholeskyPivotTolerance * max(diag(A)) counts as singular.
inline constexpr double kCholeskyPivotTolerance = 1e-10;

/// Lower-triangular L with L * L^T = a. Throws InvalidArgument when a is not
/// exactly symmetric and NotPositiveDefinite when a pivot falls at or below
/// the relative tolerance.
Matrix cholesky(const Matrix& a,
                double relative_pivot_tolerance = kCholeskyPivotTolerance);

/// max_ij |a_ij - a_ji|
double max_asymmetry(const Matrix& a);

/// Sample mean (row vector as Vector) and unbiased covariance of rows.
Vector sample_mean(const SampleMatrix& x);
Matrix sample_covariance(const SampleMatrix& x);

}  // namespace bmcheck
