#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "bmcheck/common/linalg.hpp"

namespace bmcheck::transforms {

/// Polymorphic implementation of a map f: R^n -> R^m. Implementations are
/// immutable; evaluate() must be safe to call concurrently.
class TransformImpl {
 public:
  virtual ~TransformImpl() = default;

  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual std::string name() const = 0;

  /// out.size() == output_dim(); x.size() == input_dim(). No allocation.
  virtual void evaluate(std::span<const double> x,
                        std::span<double> out) const = 0;

  /// Analytic m x n Jacobian, or nullopt when the entry has none.
  /// Throws NotDifferentiableHere at points where f has no derivative.
  virtual std::optional<Matrix> jacobian(std::span<const double> x) const;

  /// Analytic Laplacian for scalar entries, or nullopt.
  virtual std::optional<double> laplacian(std::span<const double> x) const;

  /// False at points where f is known not to be differentiable; the
  /// finite-difference path refuses those points as well.
  virtual bool differentiable_at(std::span<const double> x) const;

  /// Whether x lies in the set where f may be evaluated.
  virtual bool in_domain(std::span<const double> x) const;
};

/// Shared immutable handle to a catalog entry. Cheap to copy.
class Transform {
 public:
  explicit Transform(std::shared_ptr<const TransformImpl> impl);

  std::size_t input_dim() const { return impl_->input_dim(); }
  std::size_t output_dim() const { return impl_->output_dim(); }
  bool is_scalar() const { return impl_->output_dim() == 1; }
  std::string name() const { return impl_->name(); }

  void evaluate(std::span<const double> x, std::span<double> out) const;
  Vector operator()(const Vector& x) const;
  /// Scalar entries only.
  double scalar(const Vector& x) const;

  bool in_domain(const Vector& x) const;

  const TransformImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const TransformImpl> impl_;
};

}  // namespace bmcheck::transforms
