#pragma once

#include <cstddef>
#include <cstdint>

namespace bmcheck::conformance {

struct TestOptions {
  double alpha = 0.01;
  std::size_t bootstrap = 200;
  std::size_t permutations = 500;
  /// Projection directions for the sliced energy statistics.
  std::size_t projections = 8;
  /// Distance covariance uses at most this many paths (the first ones).
  std::size_t dcov_max_samples = 1000;
  std::size_t qv_calibration_runs = 100;
  std::size_t qv_calibration_paths = 250;
  std::uint64_t seed = 0;
};

}  // namespace bmcheck::conformance
