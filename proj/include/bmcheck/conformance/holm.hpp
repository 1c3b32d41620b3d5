#pragma once

#include <cstddef>
#include <vector>

namespace bmcheck::conformance {

struct HolmResult {
  /// Per hypothesis (input order): reject iff p < thresholds[i].
  std::vector<double> thresholds;
  std::vector<bool> rejected;
  /// Holm-adjusted p-values, comparable with alpha directly.
  std::vector<double> adjusted;
  std::size_t rejections = 0;
};

/// Holm step-down procedure at family level alpha.
///
/// With p-values sorted ascending, the k-th (1-based) is compared to
/// alpha / (m - k + 1) until the first failure at rank j; hypotheses of rank
/// k >= j share the threshold alpha / (m - j + 1).
HolmResult holm(const std::vector<double>& p_values, double alpha);

}  // namespace bmcheck::conformance
