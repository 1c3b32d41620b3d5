#pragma once

#include <charconv>
#include <string>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string format_vector(const Vector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s + "]";
}

inline std::string format_matrix(const Matrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += ',';
    s += format_vector(m.row(i).transpose());
  }
  return s + "]";
}

}  // namespace bmcheck
