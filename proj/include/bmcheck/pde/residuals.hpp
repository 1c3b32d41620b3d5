#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/common/verdict.hpp"
#include "bmcheck/pde/grid_domain.hpp"
#include "bmcheck/transforms/differentiation.hpp"
#include "bmcheck/transforms/transform.hpp"

namespace bmcheck::pde {

/// Pointwise residual summary. Monte Carlo checks fill signed_residual and
/// standard_error and use tolerance = 3 standard errors.
struct ResidualReport {
  std::string name;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  Vector argmax;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  std::optional<double> signed_residual;
  std::optional<double> standard_error;
  /// Points skipped because the field has no derivative there.
  std::vector<Vector> excluded;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const ResidualReport& report);

inline constexpr double kDefaultGridSpacing = 0.05;

/// |central second-difference Laplacian| at every masked point, with the grid
/// spacing as stencil step. Throws HaloOutsideEvaluationDomain when a stencil
/// point lies outside u's evaluation domain.
ResidualReport laplacian_residual(const transforms::Transform& u, const GridDomain& domain,
                                  double tolerance = 1e-6);

/// | |grad u| - target | at every masked point. Points where u is not
/// differentiable are excluded and listed.
ResidualReport eikonal_residual(
    const transforms::Transform& u, const GridDomain& domain, double target,
    double tolerance = 1e-6,
    transforms::DerivativeMethod method = transforms::DerivativeMethod::automatic);

/// p = mean gradient over the masked points; residual = max |grad u - p|.
/// Throws DisconnectedMask when the masked set is not connected.
std::pair<Vector, ResidualReport> gradient_constancy(
    const transforms::Transform& u, const GridDomain& domain, double tolerance = 1e-4,
    transforms::DerivativeMethod method = transforms::DerivativeMethod::automatic);

}  // namespace bmcheck::pde
