#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bmcheck/common/linalg.hpp"
#include "bmcheck/process/time_grid.hpp"

namespace bmcheck::process {

/// N sampled paths of a d-dimensional process on a time grid, stored path
/// major: value(p, k)[j] = data[(p * (K + 1) + k) * d + j].
class PathEnsemble {
 public:
  /// Validates shape and that every path starts at origin.
  PathEnsemble(TimeGrid grid, std::size_t paths, std::size_t dimension,
               std::vector<double> values, std::uint64_t seed, Vector origin);

  std::size_t num_paths() const { return paths_; }
  std::size_t num_times() const { return grid_.size(); }
  std::size_t dimension() const { return dimension_; }
  const TimeGrid& grid() const { return grid_; }
  std::uint64_t seed() const { return seed_; }
  const Vector& origin() const { return origin_; }

  std::span<const double> point(std::size_t path, std::size_t step) const;
  std::span<const double> data() const { return values_; }

  /// N x d values at grid index `step`.
  SampleMatrix marginal(std::size_t step) const;
  /// N x d values X(to) - X(from).
  SampleMatrix increments(std::size_t from, std::size_t to) const;

  /// Moves the storage out; the ensemble is left empty.
  std::vector<double> release_values() &&;

 private:
  TimeGrid grid_;
  std::size_t paths_;
  std::size_t dimension_;
  std::vector<double> values_;
  std::uint64_t seed_;
  Vector origin_;
};

}  // namespace bmcheck::process
