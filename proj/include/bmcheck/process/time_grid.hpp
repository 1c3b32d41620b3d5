#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace bmcheck::process {

/// Strictly increasing time points starting at 0.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  /// K equal steps on [0, horizon]; times[i] = i * horizon / K.
  static TimeGrid uniform(double horizon, std::size_t steps);

  std::size_t size() const { return times_.size(); }
  std::size_t steps() const { return times_.size() - 1; }
  double horizon() const { return times_.back(); }
  double operator[](std::size_t i) const { return times_[i]; }
  const std::vector<double>& times() const { return times_; }

  /// Index of the grid point equal to t within 1e-9 * max(1, |t|).
  std::optional<std::size_t> index_of(double t) const;
  /// As index_of, throwing WindowNotOnGrid when t is not a grid point.
  std::size_t require_index(double t) const;

 private:
  std::vector<double> times_;
};

}  // namespace bmcheck::process
