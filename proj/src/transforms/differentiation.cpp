#include "bmcheck/transforms/differentiation.hpp"

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::transforms {
namespace {

void require_input(const Transform& f, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != f.input_dim())
    throw DimensionMismatch(f.name() + ": point has wrong dimension");
}

void require_differentiable(const Transform& f, const Vector& x) {
  if (!f.impl().differentiable_at({x.data(), static_cast<std::size_t>(x.size())}))
    throw NotDifferentiableHere(f.name() + " is not differentiable at " +
                                format_vector(x));
}

void require_scalar(const Transform& f) {
  if (!f.is_scalar())
    throw DimensionMismatch(f.name() + " is not a scalar field");
}

}  // namespace

double default_gradient_step(const Vector& x) { return 1e-5 * (1.0 + x.norm()); }

double default_laplacian_step(const Vector& x) { return 1e-4 * (1.0 + x.norm()); }

Matrix jacobian(const Transform& f, const Vector& x, DerivativeMethod method,
                std::optional<double> step) {
  require_input(f, x);
  require_differentiable(f, x);
  if (method != DerivativeMethod::finite_difference) {
    auto analytic =
        f.impl().jacobian({x.data(), static_cast<std::size_t>(x.size())});
    if (analytic) return *analytic;
    if (method == DerivativeMethod::analytic)
      throw InvalidArgument(f.name() + " has no analytic derivative");
  }
  const double h = step.value_or(default_gradient_step(x));
  const auto n = x.size();
  Matrix j(static_cast<Eigen::Index>(f.output_dim()), n);
  Vector probe = x;
  for (Eigen::Index k = 0; k < n; ++k) {
    probe[k] = x[k] + h;
    const Vector plus = f(probe);
    probe[k] = x[k] - h;
    const Vector minus = f(probe);
    probe[k] = x[k];
    j.col(k) = (plus - minus) / (2.0 * h);
  }
  return j;
}

Vector gradient(const Transform& f, const Vector& x, DerivativeMethod method,
                std::optional<double> step) {
  require_scalar(f);
  return jacobian(f, x, method, step).row(0).transpose();
}

double laplacian(const Transform& f, const Vector& x, DerivativeMethod method,
                 std::optional<double> step) {
  require_scalar(f);
  require_input(f, x);
  require_differentiable(f, x);
  if (method != DerivativeMethod::finite_difference) {
    auto analytic =
        f.impl().laplacian({x.data(), static_cast<std::size_t>(x.size())});
    if (analytic) return *analytic;
    if (method == DerivativeMethod::analytic)
      throw InvalidArgument(f.name() + " has no analytic Laplacian");
  }
  const double h = step.value_or(default_laplacian_step(x));
  const double center = f.scalar(x);
  Vector probe = x;
  double sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double plus = f.scalar(probe);
    probe[k] = x[k] - h;
    const double minus = f.scalar(probe);
    probe[k] = x[k];
    sum += plus - 2.0 * center + minus;
  }
  return sum / (h * h);
}

std::vector<double> eikonal_profile(const Transform& f,
                                    const std::vector<Vector>& points,
                                    DerivativeMethod method) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(gradient(f, p, method).norm());
  return out;
}

}  // namespace bmcheck::transforms
