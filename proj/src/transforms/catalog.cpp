#include "bmcheck/transforms/catalog.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/format.hpp"

namespace bmcheck::transforms {
namespace {

Eigen::Map<const Vector> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

void require_dim(std::size_t n, const char* what) {
  if (n < 1) throw InvalidArgument(std::string(what) + ": dimension must be >= 1");
}

class HarmonicPower final : public TransformImpl {
 public:
  HarmonicPower(int k, HarmonicPart part) : k_(k), part_(part) {
    if (k < 1) throw InvalidArgument("harmonic: power must be >= 1");
  }
  std::size_t input_dim() const override { return 2; }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override {
    return std::string("harmonic(") +
           (part_ == HarmonicPart::real ? "re" : "im") + "_z^" +
           std::to_string(k_) + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    const std::complex<double> w = power(x, k_);
    out[0] = part_ == HarmonicPart::real ? w.real() : w.imag();
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    // d/dx1 z^k = k z^{k-1}, d/dx2 z^k = i k z^{k-1}.
    const std::complex<double> d = static_cast<double>(k_) * power(x, k_ - 1);
    Matrix j(1, 2);
    if (part_ == HarmonicPart::real)
      j << d.real(), -d.imag();
    else
      j << d.imag(), d.real();
    return j;
  }
  std::optional<double> laplacian(std::span<const double>) const override {
    return 0.0;
  }

 private:
  // Repeated multiplication keeps integer powers exact on small integers.
  static std::complex<double> power(std::span<const double> x, int k) {
    const std::complex<double> z(x[0], x[1]);
    std::complex<double> w(1.0, 0.0);
    for (int i = 0; i < k; ++i) w *= z;
    return w;
  }

  int k_;
  HarmonicPart part_;
};

class CoordinateSquare final : public TransformImpl {
 public:
  CoordinateSquare(std::size_t n, std::size_t i) : n_(n), i_(i) {
    require_dim(n, "square");
    if (i >= n) throw InvalidArgument("square: coordinate out of range");
  }
  std::size_t input_dim() const override { return n_; }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override {
    return "square(i=" + std::to_string(i_) + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    out[0] = x[i_] * x[i_];
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    Matrix j = Matrix::Zero(1, static_cast<Eigen::Index>(n_));
    j(0, static_cast<Eigen::Index>(i_)) = 2.0 * x[i_];
    return j;
  }
  std::optional<double> laplacian(std::span<const double>) const override {
    return 2.0;
  }

 private:
  std::size_t n_, i_;
};

class CubicPerturbation final : public TransformImpl {
 public:
  CubicPerturbation(std::size_t n, double eps) : n_(n), eps_(eps) {
    require_dim(n, "cubic");
  }
  std::size_t input_dim() const override { return n_; }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override {
    return "cubic(eps=" + format_number(eps_) + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    out[0] = x[0] + eps_ * x[0] * x[0] * x[0];
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    Matrix j = Matrix::Zero(1, static_cast<Eigen::Index>(n_));
    j(0, 0) = 1.0 + 3.0 * eps_ * x[0] * x[0];
    return j;
  }
  std::optional<double> laplacian(std::span<const double> x) const override {
    return 6.0 * eps_ * x[0];
  }

 private:
  std::size_t n_;
  double eps_;
};

class ConstantField final : public TransformImpl {
 public:
  ConstantField(std::size_t n, double value) : n_(n), value_(value) {
    require_dim(n, "constant");
  }
  std::size_t input_dim() const override { return n_; }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override {
    return "constant(c=" + format_number(value_) + ")";
  }
  void evaluate(std::span<const double>, std::span<double> out) const override {
    out[0] = value_;
  }
  std::optional<Matrix> jacobian(std::span<const double>) const override {
    return Matrix::Zero(1, static_cast<Eigen::Index>(n_));
  }
  std::optional<double> laplacian(std::span<const double>) const override {
    return 0.0;
  }

 private:
  std::size_t n_;
  double value_;
};

class GaussianBump final : public TransformImpl {
 public:
  explicit GaussianBump(std::size_t n) : n_(n) { require_dim(n, "gaussian_bump"); }
  std::size_t input_dim() const override { return n_; }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override { return "gaussian_bump"; }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    out[0] = std::exp(-0.5 * as_vector(x).squaredNorm());
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    const auto v = as_vector(x);
    return Matrix(-std::exp(-0.5 * v.squaredNorm()) * v.transpose());
  }
  std::optional<double> laplacian(std::span<const double> x) const override {
    const double r2 = as_vector(x).squaredNorm();
    return (r2 - static_cast<double>(n_)) * std::exp(-0.5 * r2);
  }

 private:
  std::size_t n_;
};

class Component final : public TransformImpl {
 public:
  Component(Transform f, std::size_t i) : f_(std::move(f)), i_(i) {
    if (i >= f_.output_dim())
      throw InvalidArgument("component: index out of range");
  }
  std::size_t input_dim() const override { return f_.input_dim(); }
  std::size_t output_dim() const override { return 1; }
  std::string name() const override {
    return "component(" + std::to_string(i_) + "," + f_.name() + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    thread_local std::vector<double> buffer;
    buffer.resize(f_.output_dim());
    f_.impl().evaluate(x, buffer);
    out[0] = buffer[i_];
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    auto j = f_.impl().jacobian(x);
    if (!j) return std::nullopt;
    return Matrix(j->row(static_cast<Eigen::Index>(i_)));
  }
  std::optional<double> laplacian(std::span<const double> x) const override {
    if (f_.output_dim() == 1) return f_.impl().laplacian(x);
    return std::nullopt;
  }
  bool differentiable_at(std::span<const double> x) const override {
    return f_.impl().differentiable_at(x);
  }
  bool in_domain(std::span<const double> x) const override {
    return f_.impl().in_domain(x);
  }

 private:
  Transform f_;
  std::size_t i_;
};

class Composite final : public TransformImpl {
 public:
  Composite(Transform outer, Transform inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (outer_.input_dim() != inner_.output_dim())
      throw DimensionMismatch("compose: " + outer_.name() + " cannot follow " +
                              inner_.name());
  }
  std::size_t input_dim() const override { return inner_.input_dim(); }
  std::size_t output_dim() const override { return outer_.output_dim(); }
  std::string name() const override {
    return "compose(" + outer_.name() + "," + inner_.name() + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    thread_local std::vector<double> middle;
    middle.resize(inner_.output_dim());
    inner_.impl().evaluate(x, middle);
    outer_.impl().evaluate(middle, out);
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    auto ji = inner_.impl().jacobian(x);
    if (!ji) return std::nullopt;
    std::vector<double> middle(inner_.output_dim());
    inner_.impl().evaluate(x, middle);
    auto jo = outer_.impl().jacobian(middle);
    if (!jo) return std::nullopt;
    return Matrix(*jo * *ji);
  }
  bool differentiable_at(std::span<const double> x) const override {
    if (!inner_.impl().differentiable_at(x)) return false;
    std::vector<double> middle(inner_.output_dim());
    inner_.impl().evaluate(x, middle);
    return outer_.impl().differentiable_at(middle);
  }

 private:
  Transform outer_, inner_;
};

class BoxRestricted final : public TransformImpl {
 public:
  BoxRestricted(Transform f, Vector lo, Vector hi)
      : f_(std::move(f)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (static_cast<std::size_t>(lo_.size()) != f_.input_dim() ||
        static_cast<std::size_t>(hi_.size()) != f_.input_dim())
      throw DimensionMismatch("restrict: box dimension mismatch");
  }
  std::size_t input_dim() const override { return f_.input_dim(); }
  std::size_t output_dim() const override { return f_.output_dim(); }
  std::string name() const override {
    return "restrict(" + f_.name() + ",lo=" + format_vector(lo_) +
           ",hi=" + format_vector(hi_) + ")";
  }
  void evaluate(std::span<const double> x,
                std::span<double> out) const override {
    if (!in_domain(x))
      throw InvalidArgument(name() + ": point outside evaluation domain");
    f_.impl().evaluate(x, out);
  }
  std::optional<Matrix> jacobian(std::span<const double> x) const override {
    return f_.impl().jacobian(x);
  }
  std::optional<double> laplacian(std::span<const double> x) const override {
    return f_.impl().laplacian(x);
  }
  bool differentiable_at(std::span<const double> x) const override {
    return f_.impl().differentiable_at(x);
  }
  bool in_domain(std::span<const double> x) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      if (x[i] < lo_[k] || x[i] > hi_[k]) return false;
    }
    return f_.impl().in_domain(x);
  }

 private:
  Transform f_;
  Vector lo_, hi_;
};

}  // namespace

AffineTransform::AffineTransform(Matrix linear, Vector offset, std::string label)
    : linear_(std::move(linear)),
      offset_(std::move(offset)),
      label_(std::move(label)) {
  if (linear_.rows() < 1 || linear_.cols() < 1)
    throw InvalidArgument("affine: P must be non-empty");
  if (offset_.size() != linear_.rows())
    throw DimensionMismatch("affine: q must have one entry per row of P");
}

AffineTransform AffineTransform::compose(const AffineTransform& inner) const {
  if (linear_.cols() != inner.linear_.rows())
    throw DimensionMismatch("affine compose: inner output does not match");
  return AffineTransform(linear_ * inner.linear_,
                         linear_ * inner.offset_ + offset_);
}

std::size_t AffineTransform::input_dim() const {
  return static_cast<std::size_t>(linear_.cols());
}

std::size_t AffineTransform::output_dim() const {
  return static_cast<std::size_t>(linear_.rows());
}

std::string AffineTransform::name() const {
  if (!label_.empty()) return label_;
  return "affine(P=" + format_matrix(linear_) + ",q=" + format_vector(offset_) +
         ")";
}

void AffineTransform::evaluate(std::span<const double> x,
                               std::span<double> out) const {
  const Eigen::Index m = linear_.rows(), n = linear_.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      s += linear_(i, j) * x[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s + offset_[i];
  }
}

std::optional<Matrix> AffineTransform::jacobian(std::span<const double>) const {
  return linear_;
}

std::optional<double> AffineTransform::laplacian(std::span<const double>) const {
  return 0.0;
}

RadialLift::RadialLift(SphereMap h) : h_(std::move(h)) {
  if (h_.dimension() < 2)
    throw InvalidArgument("radial_lift: dimension must be >= 2");
}

std::string RadialLift::name() const {
  return "radial_lift(" + h_.name() + ")";
}

void RadialLift::evaluate(std::span<const double> x,
                          std::span<double> out) const {
  h_.lift(x, out);
}

std::optional<Matrix> RadialLift::jacobian(std::span<const double> x) const {
  return h_.lift_jacobian(x);
}

bool RadialLift::differentiable_at(std::span<const double> x) const {
  if (h_.lifts_to_linear()) return true;
  for (double v : x)
    if (v != 0.0) return true;
  return false;
}

Transform affine(Matrix linear, Vector offset) {
  return Transform(
      std::make_shared<AffineTransform>(std::move(linear), std::move(offset)));
}

Transform affine_scalar(Vector gradient, double offset) {
  Matrix p = gradient.transpose();
  Vector q(1);
  q << offset;
  return affine(std::move(p), std::move(q));
}

Transform identity(std::size_t n) {
  require_dim(n, "identity");
  const auto k = static_cast<Eigen::Index>(n);
  return Transform(std::make_shared<AffineTransform>(
      Matrix::Identity(k, k), Vector::Zero(k), "identity"));
}

Transform radial_lift(SphereMap h) {
  return Transform(std::make_shared<RadialLift>(std::move(h)));
}

Transform harmonic_power(int k, HarmonicPart part) {
  return Transform(std::make_shared<HarmonicPower>(k, part));
}

Transform coordinate_square(std::size_t n, std::size_t i) {
  return Transform(std::make_shared<CoordinateSquare>(n, i));
}

Transform cubic_perturbation(std::size_t n, double eps) {
  return Transform(std::make_shared<CubicPerturbation>(n, eps));
}

Transform constant(std::size_t n, double value) {
  return Transform(std::make_shared<ConstantField>(n, value));
}

Transform gaussian_bump(std::size_t n) {
  return Transform(std::make_shared<GaussianBump>(n));
}

Transform component(Transform f, std::size_t i) {
  return Transform(std::make_shared<Component>(std::move(f), i));
}

Transform compose(Transform outer, Transform inner) {
  return Transform(
      std::make_shared<Composite>(std::move(outer), std::move(inner)));
}

Transform restrict_to_box(Transform f, Vector lo, Vector hi) {
  return Transform(std::make_shared<BoxRestricted>(std::move(f), std::move(lo),
                                                   std::move(hi)));
}

const AffineTransform* as_affine(const Transform& t) {
  return dynamic_cast<const AffineTransform*>(&t.impl());
}

}  // namespace bmcheck::transforms
