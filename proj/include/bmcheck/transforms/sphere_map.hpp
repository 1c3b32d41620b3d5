#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::transforms {

/// Continuous map of the unit sphere S^{n-1} onto itself that leaves the
/// uniform measure invariant.
class SphereMap {
 public:
  enum class Kind { identity, rotation, angle_multiply };

  static SphereMap identity(std::size_t n);
  /// r must be orthogonal to 1e-10 in max-entry norm.
  static SphereMap rotation(Matrix r);
  static SphereMap planar_rotation(double angle);
  /// theta -> k * theta on the circle; n = 2 only, |k| >= 1.
  static SphereMap angle_multiply(int k);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }
  int multiplier() const { return k_; }
  const Matrix& rotation_matrix() const { return r_; }

  /// True when the radial lift of this map is a linear map.
  bool lifts_to_linear() const;

  /// h(u) for a unit vector u. For angle_multiply(2) this is the algebraic
  /// form (u1^2 - u2^2, 2 u1 u2); other multipliers go through atan2.
  Vector apply(const Vector& u) const;

  /// (cos k theta, sin k theta) with theta = atan2(u2, u1), for every k.
  Vector apply_polar(const Vector& u) const;

  /// Radial lift g(x) = |x| h(x / |x|), g(0) = 0, written into out.
  void lift(std::span<const double> x, std::span<double> out) const;

  /// Jacobian of the radial lift at x. Throws NotDifferentiableHere at the
  /// origin unless the lift is linear.
  Matrix lift_jacobian(std::span<const double> x) const;

  std::string name() const;

 private:
  SphereMap(Kind kind, std::size_t n, Matrix r, int k);

  Kind kind_;
  std::size_t n_;
  Matrix r_;
  int k_;
};

}  // namespace bmcheck::transforms
