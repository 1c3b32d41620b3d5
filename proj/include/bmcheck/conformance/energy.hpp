#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::conformance {

/// Unit projection directions in R^d used by the sliced energy statistics.
/// d = 1: the single direction; d = 2: angles k pi / count; d >= 3: fixed
/// pseudo-random directions. Depends only on (d, count).
std::vector<Vector> projection_directions(std::size_t d, std::size_t count);

/// c_d with E|<u, z>| = c_d |z| for u uniform on the unit sphere of R^d.
double sphere_projection_constant(std::size_t d);

/// One-dimensional energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| between the
/// empirical laws of x and y (V-statistic form, equal to 2 * int (F - G)^2).
double energy_distance_1d(std::span<const double> x, std::span<const double> y);

/// Mean over directions of the projected 1-d energy distances, divided by
/// c_d so that it estimates the multivariate energy distance.
double sliced_energy_distance(const SampleMatrix& x, const SampleMatrix& y,
                              const std::vector<Vector>& directions);

struct PermutationResult {
  double statistic = 0.0;  ///< nm/(n+m) * sliced energy distance
  double p_value = 1.0;    ///< (1 + #{perm >= observed}) / (permutations + 1)
  std::size_t exceedances = 0;
};

/// Two-sample permutation test on the sliced energy statistic. Each
/// permutation is drawn from its own substream of key, so the result does not
/// depend on the thread count.
PermutationResult energy_permutation_test(const SampleMatrix& x,
                                          const SampleMatrix& y,
                                          const std::vector<Vector>& directions,
                                          std::size_t permutations,
                                          std::uint64_t key);

/// N * mean over directions of the 1-d energy distance between the projected
/// sample and N(0, 1), for data that is already whitened.
double energy_gof_statistic(const SampleMatrix& whitened,
                            const std::vector<Vector>& directions);

}  // namespace bmcheck::conformance
