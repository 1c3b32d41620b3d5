#include "bmcheck/pde/grid_domain.hpp"

#include <cmath>

#include "bmcheck/common/errors.hpp"

namespace bmcheck::pde {

GridDomain::GridDomain(Vector lo, Vector hi, double spacing, Mask mask,
                       std::string mask_name)
    : lo_(std::move(lo)), hi_(std::move(hi)), h_(spacing), mask_name_(std::move(mask_name)) {
  if (lo_.size() < 1 || lo_.size() != hi_.size())
    throw DimensionMismatch("GridDomain: lo and hi must have the same positive length");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw InvalidArgument("GridDomain: spacing must be > 0");
  std::size_t total = 1;
  for (Eigen::Index j = 0; j < lo_.size(); ++j) {
    if (!(hi_[j] >= lo_[j])) throw InvalidArgument("GridDomain: need lo <= hi on every axis");
    const auto count = static_cast<std::size_t>(std::floor((hi_[j] - lo_[j]) / h_ + 1e-9)) + 1;
    shape_.push_back(count);
    total *= count;
    if (total > 50'000'000) throw InvalidArgument("GridDomain: grid too large");
  }
  inside_.assign(total, 0);
  for (std::size_t f = 0; f < total; ++f)
    if (mask(point_at(f))) {
      inside_[f] = 1;
      masked_.push_back(f);
    }
}

GridDomain GridDomain::box(Vector lo, Vector hi, double spacing) {
  return GridDomain(std::move(lo), std::move(hi), spacing, [](const Vector&) { return true; },
                    "box");
}

GridDomain GridDomain::annulus(Vector center, double inner, double outer, double spacing) {
  if (!(inner >= 0.0 && outer > inner))
    throw InvalidArgument("GridDomain: need 0 <= inner < outer");
  const Vector lo = center.array() - outer, hi = center.array() + outer;
  // Small slack keeps boundary points that land on the sphere up to rounding.
  const double slack = 1e-12 * (1.0 + outer);
  return GridDomain(
      lo, hi, spacing,
      [center, inner, outer, slack](const Vector& x) {
        const double r = (x - center).norm();
        return r >= inner - slack && r <= outer + slack;
      },
      inner == 0.0 ? "ball" : "annulus");
}

GridDomain GridDomain::ball(Vector center, double radius, double spacing) {
  return annulus(std::move(center), 0.0, radius, spacing);
}

Vector GridDomain::point_at(std::size_t flat) const {
  const auto n = lo_.size();
  Vector x(n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    const std::size_t count = shape_[static_cast<std::size_t>(j)];
    x[j] = lo_[j] + static_cast<double>(flat % count) * h_;
    flat /= count;
  }
  return x;
}

std::vector<Vector> GridDomain::points() const {
  std::vector<Vector> out;
  out.reserve(masked_.size());
  for (std::size_t f : masked_) out.push_back(point_at(f));
  return out;
}

bool GridDomain::connected() const {
  if (masked_.empty()) return false;
  std::vector<std::size_t> stride(shape_.size(), 1);
  for (std::size_t j = shape_.size() - 1; j > 0; --j) stride[j - 1] = stride[j] * shape_[j];
  std::vector<std::uint8_t> seen(inside_.size(), 0);
  std::vector<std::size_t> stack{masked_.front()};
  seen[masked_.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t f = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t j = 0; j < shape_.size(); ++j) {
      const std::size_t coord = (f / stride[j]) % shape_[j];
      for (int dir : {-1, 1}) {
        if ((dir < 0 && coord == 0) || (dir > 0 && coord + 1 == shape_[j])) continue;
        const std::size_t g = dir < 0 ? f - stride[j] : f + stride[j];
        if (inside_[g] && !seen[g]) {
          seen[g] = 1;
          stack.push_back(g);
        }
      }
    }
  }
  return reached == masked_.size();
}

}  // namespace bmcheck::pde
