#include "bmcheck/conformance/holm.hpp"

#include <algorithm>
#include <numeric>

#include "bmcheck/common/errors.hpp"

namespace bmcheck::conformance {

HolmResult holm(const std::vector<double>& p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("holm: alpha must lie in (0, 1)");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p_values[a] < p_values[b];
  });

  HolmResult r;
  r.thresholds.assign(m, 0.0);
  r.rejected.assign(m, false);
  r.adjusted.assign(m, 1.0);
  bool stopped = false;
  double stop_threshold = 0.0, running = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = order[k];
    const double level = alpha / static_cast<double>(m - k);
    if (!stopped && !(p_values[i] < level)) {
      stopped = true;
      stop_threshold = level;
    }
    r.thresholds[i] = stopped ? stop_threshold : level;
    r.rejected[i] = !stopped;
    running = std::max(running, std::min(1.0, static_cast<double>(m - k) * p_values[i]));
    r.adjusted[i] = running;
    if (!stopped) ++r.rejections;
  }
  return r;
}

}  // namespace bmcheck::conformance
