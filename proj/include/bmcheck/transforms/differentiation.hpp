#pragma once

#include <optional>
#include <vector>

#include "bmcheck/transforms/transform.hpp"

namespace bmcheck::transforms {

enum class DerivativeMethod {
  automatic,          ///< analytic when the entry has it, else central differences
  analytic,
  finite_difference,
};

/// Default central-difference step for gradients: 1e-5 * (1 + |x|).
double default_gradient_step(const Vector& x);
/// Default step for the second-difference Laplacian: 1e-4 * (1 + |x|).
double default_laplacian_step(const Vector& x);

Matrix jacobian(const Transform& f, const Vector& x,
                DerivativeMethod method = DerivativeMethod::automatic,
                std::optional<double> step = std::nullopt);

/// Gradient of a scalar field. Throws NotDifferentiableHere at kinks of the
/// catalog entry (the radial lift origin) on every route.
Vector gradient(const Transform& f, const Vector& x,
                DerivativeMethod method = DerivativeMethod::automatic,
                std::optional<double> step = std::nullopt);

double laplacian(const Transform& f, const Vector& x,
                 DerivativeMethod method = DerivativeMethod::automatic,
                 std::optional<double> step = std::nullopt);

/// |grad f| at each point; a constant profile is the eikonal certificate.
std::vector<double> eikonal_profile(
    const Transform& f, const std::vector<Vector>& points,
    DerivativeMethod method = DerivativeMethod::automatic);

}  // namespace bmcheck::transforms
