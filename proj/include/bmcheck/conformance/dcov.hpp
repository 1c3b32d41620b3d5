#pragma once

#include <cstddef>
#include <cstdint>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/conformance/energy.hpp"

namespace bmcheck::conformance {

/// Squared sample distance covariance (V-statistic) between paired rows of x
/// and y: (1/n^2) sum_ij A_ij B_ij with double-centred distance matrices.
double distance_covariance(const SampleMatrix& x, const SampleMatrix& y);

/// Permutation test of independence on n * dCov^2; rows of y are permuted.
PermutationResult dcov_permutation_test(const SampleMatrix& x,
                                        const SampleMatrix& y,
                                        std::size_t permutations,
                                        std::uint64_t key);

}  // namespace bmcheck::conformance
