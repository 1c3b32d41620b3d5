#include "bmcheck/transforms/sphere_map.hpp"

#include <cmath>
#include <cstdlib>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::transforms {

SphereMap::SphereMap(Kind kind, std::size_t n, Matrix r, int k)
    : kind_(kind), n_(n), r_(std::move(r)), k_(k) {}

SphereMap SphereMap::identity(std::size_t n) {
  if (n < 1) throw InvalidArgument("SphereMap::identity: n must be >= 1");
  return SphereMap(Kind::identity, n,
                   Matrix::Identity(static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n)),
                   1);
}

SphereMap SphereMap::rotation(Matrix r) {
  if (r.rows() != r.cols() || r.rows() < 1)
    throw InvalidArgument("SphereMap::rotation: matrix must be square");
  const Matrix gram = r.transpose() * r;
  const double defect =
      (gram - Matrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw InvalidArgument("SphereMap::rotation: matrix is not orthogonal");
  const auto n = static_cast<std::size_t>(r.rows());
  return SphereMap(Kind::rotation, n, std::move(r), 1);
}

SphereMap SphereMap::planar_rotation(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return rotation(std::move(r));
}

SphereMap SphereMap::angle_multiply(int k) {
  if (k == 0)
    throw InvalidArgument("SphereMap::angle_multiply: |k| must be >= 1");
  return SphereMap(Kind::angle_multiply, 2, Matrix::Identity(2, 2), k);
}

bool SphereMap::lifts_to_linear() const {
  return kind_ != Kind::angle_multiply || std::abs(k_) == 1;
}

Vector SphereMap::apply_polar(const Vector& u) const {
  if (kind_ != Kind::angle_multiply) return apply(u);
  const double theta = std::atan2(u[1], u[0]);
  Vector out(2);
  out << std::cos(k_ * theta), std::sin(k_ * theta);
  return out;
}

Vector SphereMap::apply(const Vector& u) const {
  if (static_cast<std::size_t>(u.size()) != n_)
    throw DimensionMismatch("SphereMap: dimension mismatch");
  switch (kind_) {
    case Kind::identity:
      return u;
    case Kind::rotation:
      return r_ * u;
    case Kind::angle_multiply:
      if (k_ == 2) {
        Vector out(2);
        out << u[0] * u[0] - u[1] * u[1], 2.0 * u[0] * u[1];
        return out;
      }
      return apply_polar(u);
  }
  return u;
}

void SphereMap::lift(std::span<const double> x, std::span<double> out) const {
  switch (kind_) {
    case Kind::identity:
      std::copy(x.begin(), x.end(), out.begin());
      return;
    case Kind::rotation:
      for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
          s += r_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
               x[j];
        out[i] = s;
      }
      return;
    case Kind::angle_multiply: {
      const double r = std::hypot(x[0], x[1]);
      if (r == 0.0) {
        out[0] = out[1] = 0.0;
        return;
      }
      if (k_ == 2) {
        out[0] = (x[0] * x[0] - x[1] * x[1]) / r;
        out[1] = 2.0 * x[0] * x[1] / r;
        return;
      }
      const double theta = std::atan2(x[1], x[0]);
      out[0] = r * std::cos(k_ * theta);
      out[1] = r * std::sin(k_ * theta);
      return;
    }
  }
}

Matrix SphereMap::lift_jacobian(std::span<const double> x) const {
  const auto n = static_cast<Eigen::Index>(n_);
  switch (kind_) {
    case Kind::identity:
      return Matrix::Identity(n, n);
    case Kind::rotation:
      return r_;
    case Kind::angle_multiply:
      break;
  }
  const double r = std::hypot(x[0], x[1]);
  if (std::abs(k_) == 1) {
    Matrix j = Matrix::Identity(2, 2);
    if (k_ == -1) j(1, 1) = -1.0;
    return j;
  }
  if (r == 0.0)
    throw NotDifferentiableHere(
        "radial lift of " + name() + " is not differentiable at the origin");
  // g = r (cos k th, sin k th): dg = h e_r^T + k h_perp e_th^T.
  const double c = x[0] / r, s = x[1] / r;
  const double theta = std::atan2(x[1], x[0]);
  const double ck = std::cos(k_ * theta), sk = std::sin(k_ * theta);
  Matrix j(2, 2);
  j(0, 0) = ck * c + k_ * sk * s;
  j(0, 1) = ck * s - k_ * sk * c;
  j(1, 0) = sk * c - k_ * ck * s;
  j(1, 1) = sk * s + k_ * ck * c;
  return j;
}

std::string SphereMap::name() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::rotation:
      return "rotation(R=" + format_matrix(r_) + ")";
    case Kind::angle_multiply:
      return "angle_multiply(" + std::to_string(k_) + ")";
  }
  return "";
}

}  // namespace bmcheck::transforms
