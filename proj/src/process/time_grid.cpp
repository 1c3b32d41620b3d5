#include "bmcheck/process/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::process {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2)
    throw InvalidArgument("TimeGrid: need at least two time points");
  if (times_.front() != 0.0) throw InvalidArgument("TimeGrid: times[0] must be 0");
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    if (!std::isfinite(times_[i + 1]) || !(times_[i + 1] > times_[i]))
      throw InvalidArgument("TimeGrid: times must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidArgument("TimeGrid: horizon must be positive");
  if (steps < 1) throw InvalidArgument("TimeGrid: need at least one step");
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    times[i] = static_cast<double>(i) * horizon / static_cast<double>(steps);
  times.back() = horizon;
  return TimeGrid(std::move(times));
}

std::optional<std::size_t> TimeGrid::index_of(double t) const {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it != times_.end() && std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - times_.begin());
  return std::nullopt;
}

std::size_t TimeGrid::require_index(double t) const {
  auto i = index_of(t);
  if (!i) throw WindowNotOnGrid("time " + format_number(t) + " is not a grid point");
  return *i;
}

}  // namespace bmcheck::process
