#include "bmcheck/transforms/transform.hpp"

#include <sstream>

#include "bmcheck/common/errors.hpp"

namespace bmcheck::transforms {

std::optional<Matrix> TransformImpl::jacobian(std::span<const double>) const {
  return std::nullopt;
}

std::optional<double> TransformImpl::laplacian(std::span<const double>) const {
  return std::nullopt;
}

bool TransformImpl::differentiable_at(std::span<const double>) const {
  return true;
}

bool TransformImpl::in_domain(std::span<const double>) const { return true; }

Transform::Transform(std::shared_ptr<const TransformImpl> impl)
    : impl_(std::move(impl)) {
  if (!impl_) throw InvalidArgument("Transform: null implementation");
}

void Transform::evaluate(std::span<const double> x,
                         std::span<double> out) const {
  if (x.size() != input_dim() || out.size() != output_dim()) {
    std::ostringstream msg;
    msg << name() << ": expects " << input_dim() << " -> " << output_dim()
        << ", got " << x.size() << " -> " << out.size();
    throw DimensionMismatch(msg.str());
  }
  impl_->evaluate(x, out);
}

Vector Transform::operator()(const Vector& x) const {
  Vector out(static_cast<Eigen::Index>(output_dim()));
  evaluate({x.data(), static_cast<std::size_t>(x.size())},
           {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

double Transform::scalar(const Vector& x) const {
  if (!is_scalar())
    throw DimensionMismatch(name() + " is not a scalar field");
  return (*this)(x)[0];
}

bool Transform::in_domain(const Vector& x) const {
  return impl_->in_domain({x.data(), static_cast<std::size_t>(x.size())});
}

}  // namespace bmcheck::transforms
