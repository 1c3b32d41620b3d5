#pragma once

#include <cstddef>
#include <optional>

#include "bmcheck/transforms/sphere_map.hpp"
#include "bmcheck/transforms/transform.hpp"

namespace bmcheck::transforms {

/// f(x) = P x + q.
class AffineTransform final : public TransformImpl {
 public:
  AffineTransform(Matrix linear, Vector offset, std::string label = {});

  const Matrix& linear() const { return linear_; }
  const Vector& offset() const { return offset_; }

  /// (*this) o inner, as a single (P, q) pair.
  AffineTransform compose(const AffineTransform& inner) const;

  std::size_t input_dim() const override;
  std::size_t output_dim() const override;
  std::string name() const override;
  void evaluate(std::span<const double> x,
                std::span<double> out) const override;
  std::optional<Matrix> jacobian(std::span<const double> x) const override;
  std::optional<double> laplacian(std::span<const double> x) const override;

 private:
  Matrix linear_;
  Vector offset_;
  std::string label_;
};

/// g(x) = |x| h(x / |x|), g(0) = 0.
class RadialLift final : public TransformImpl {
 public:
  explicit RadialLift(SphereMap h);

  const SphereMap& sphere_map() const { return h_; }

  std::size_t input_dim() const override { return h_.dimension(); }
  std::size_t output_dim() const override { return h_.dimension(); }
  std::string name() const override;
  void evaluate(std::span<const double> x,
                std::span<double> out) const override;
  std::optional<Matrix> jacobian(std::span<const double> x) const override;
  bool differentiable_at(std::span<const double> x) const override;

 private:
  SphereMap h_;
};

enum class HarmonicPart { real, imaginary };

// Entries below are scalar fields unless stated otherwise.

Transform affine(Matrix linear, Vector offset);
Transform affine_scalar(Vector gradient, double offset);
Transform identity(std::size_t n);
Transform radial_lift(SphereMap h);
/// Re or Im of (x1 + i x2)^k on R^2, k >= 1.
Transform harmonic_power(int k, HarmonicPart part);
/// u(x) = x_i^2 on R^n.
Transform coordinate_square(std::size_t n, std::size_t i);
/// u(x) = x_1 + eps * x_1^3 on R^n.
Transform cubic_perturbation(std::size_t n, double eps);
Transform constant(std::size_t n, double value);
/// u(x) = exp(-|x|^2 / 2).
Transform gaussian_bump(std::size_t n);
/// i-th output coordinate of f.
Transform component(Transform f, std::size_t i);
/// outer o inner (vector valued).
Transform compose(Transform outer, Transform inner);
/// f restricted to the closed box [lo, hi]; evaluation outside throws.
Transform restrict_to_box(Transform f, Vector lo, Vector hi);

/// The affine implementation behind t, if t is affine.
const AffineTransform* as_affine(const Transform& t);

}  // namespace bmcheck::transforms
