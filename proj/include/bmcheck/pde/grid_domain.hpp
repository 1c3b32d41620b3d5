#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::pde {

/// Regular grid lo + i h inside the box [lo, hi], restricted to the points
/// where the mask holds.
class GridDomain {
 public:
  using Mask = std::function<bool(const Vector&)>;

  GridDomain(Vector lo, Vector hi, double spacing, Mask mask, std::string mask_name);

  static GridDomain box(Vector lo, Vector hi, double spacing);
  /// Points of the box [-outer, outer]^n around center with
  /// inner <= |x - center| <= outer. inner = 0 gives the closed ball.
  static GridDomain annulus(Vector center, double inner, double outer, double spacing);
  static GridDomain ball(Vector center, double radius, double spacing);

  std::size_t dimension() const { return static_cast<std::size_t>(lo_.size()); }
  double spacing() const { return h_; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  const std::string& mask_name() const { return mask_name_; }
  /// Grid points per axis.
  const std::vector<std::size_t>& shape() const { return shape_; }

  /// Masked points, in lexicographic grid order (last axis fastest).
  std::vector<Vector> points() const;
  std::size_t size() const { return masked_.size(); }

  /// Whether the masked set is connected under axis-neighbour adjacency.
  bool connected() const;

 private:
  Vector point_at(std::size_t flat) const;

  Vector lo_, hi_;
  double h_;
  std::string mask_name_;
  std::vector<std::size_t> shape_;
  std::vector<std::uint8_t> inside_;  ///< per grid point
  std::vector<std::size_t> masked_;   ///< flat indices of masked points
};

}  // namespace bmcheck::pde
