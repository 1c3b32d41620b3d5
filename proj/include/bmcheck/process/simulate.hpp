#pragma once

#include <cstddef>
#include <cstdint>

#include "bmcheck/process/gaussian_law.hpp"
#include "bmcheck/process/path_ensemble.hpp"
#include "bmcheck/transforms/transform.hpp"

namespace bmcheck::process {

/// Exact simulation on the grid: each increment over [t_i, t_{i+1}] is
/// dt * b + sqrt(dt) * L * Z with Z drawn from the substream keyed by
/// (seed, path, step). Output does not depend on thread count.
PathEnsemble sample_paths(const GaussianLaw& law, const TimeGrid& grid,
                          std::size_t paths, const Vector& origin,
                          std::uint64_t seed);

/// Pointwise f(X) at every (path, step). Throws DimensionMismatch when f's
/// input dimension differs from the ensemble's.
PathEnsemble apply_transform(const PathEnsemble& ensemble,
                             const transforms::Transform& f);
/// Reuses the input storage when f maps R^d to R^d.
PathEnsemble apply_transform(PathEnsemble&& ensemble,
                             const transforms::Transform& f);

}  // namespace bmcheck::process
