#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/transforms/catalog.hpp"
#include "bmcheck/transforms/differentiation.hpp"
#include "bmcheck/transforms/parse.hpp"
#include "bmcheck/transforms/sphere_map.hpp"

using namespace bmcheck;
using namespace bmcheck::transforms;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector random_point(Substream& rng, std::size_t n, double scale) {
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

Transform doubling() { return radial_lift(SphereMap::angle_multiply(2)); }

}  // namespace

TEST(RadialLift, AngleDoublingValues) {
  const auto g = doubling();
  const Vector a = g(vec({1, 0}));
  EXPECT_EQ(a[0], 1.0);
  EXPECT_EQ(a[1], 0.0);
  // Oracle: ((x1^2 - x2^2)/r, 2 x1 x2 / r) with r = 5.
  const Vector b = g(vec({3, 4}));
  EXPECT_NEAR(b[0], -7.0 / 5.0, 1e-15);
  EXPECT_NEAR(b[1], 24.0 / 5.0, 1e-15);
  EXPECT_NEAR(b[0], -1.4, 1e-12);
  EXPECT_NEAR(b[1], 4.8, 1e-12);
}

TEST(RadialLift, OriginMapsToOrigin) {
  for (const auto& h : {SphereMap::angle_multiply(2), SphereMap::angle_multiply(-3),
                        SphereMap::planar_rotation(0.7), SphereMap::identity(2)}) {
    const Vector z = radial_lift(h)(Vector::Zero(2));
    EXPECT_EQ(z[0], 0.0);
    EXPECT_EQ(z[1], 0.0);
  }
  const Vector z3 = radial_lift(SphereMap::identity(3))(Vector::Zero(3));
  EXPECT_EQ(z3.norm(), 0.0);
}

TEST(RadialLift, NormPreservation) {
  Substream rng(derive_key(1, "norm"), 0);
  std::vector<Transform> lifts{doubling(), radial_lift(SphereMap::angle_multiply(5)),
                               radial_lift(SphereMap::planar_rotation(1.1))};
  for (const auto& g : lifts) {
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
      const Vector x = random_point(rng, 2, std::exp(3 * rng.normal()));
      worst = std::max(worst, std::abs(g(x).norm() - x.norm()) / (1 + x.norm()));
    }
    EXPECT_LE(worst, 1e-12) << g.name();
  }
}

TEST(SphereMap, UnitVectorsStayUnit) {
  Substream rng(derive_key(2, "unit"), 0);
  for (int k : {1, 2, 3, -2, 7}) {
    const auto h = SphereMap::angle_multiply(k);
    for (int i = 0; i < 2000; ++i) {
      Vector u = random_point(rng, 2, 1.0);
      u /= u.norm();
      EXPECT_LE(std::abs(h.apply(u).norm() - 1.0), 1e-12);
    }
  }
}

TEST(SphereMap, ClosedFormAgreesWithPolarInEveryQuadrant) {
  const auto h = SphereMap::angle_multiply(2);
  for (int i = 0; i < 3600; ++i) {
    const double th = -std::numbers::pi + 2 * std::numbers::pi * i / 3600.0;
    const Vector u = vec({std::cos(th), std::sin(th)});
    EXPECT_LE((h.apply(u) - h.apply_polar(u)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SphereMap, RotationMustBeOrthogonal) {
  Matrix r(2, 2);
  r << 1, 0.1, 0, 1;
  EXPECT_THROW(SphereMap::rotation(r), InvalidArgument);
  EXPECT_THROW(SphereMap::angle_multiply(0), InvalidArgument);
}

TEST(Gradient, AffineField) {
  const auto u = affine_scalar(vec({0.6, 0.8}), 2.0);
  EXPECT_EQ(gradient(u, vec({3, -7})), vec({0.6, 0.8}));
  EXPECT_EQ(laplacian(u, vec({3, -7})), 0.0);
}

TEST(Gradient, SaddleField) {
  const auto u = harmonic_power(2, HarmonicPart::real);
  EXPECT_EQ(u.scalar(vec({3, 2})), 5.0);
  const Vector g = gradient(u, vec({1, 0}));
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
  EXPECT_EQ(laplacian(u, vec({1, 0})), 0.0);
  EXPECT_NEAR(laplacian(u, vec({1, 0}), DerivativeMethod::finite_difference), 0.0,
              1e-6);
}

TEST(Gradient, CoordinateSquareLaplacian) {
  const auto u = coordinate_square(2, 0);
  for (const auto& x : {vec({0, 0}), vec({0.3, -2}), vec({5, 5})}) {
    EXPECT_EQ(laplacian(u, x), 2.0);
    EXPECT_NEAR(laplacian(u, x, DerivativeMethod::finite_difference), 2.0, 1e-5);
  }
}

TEST(Gradient, RadialLiftOriginNotDifferentiable) {
  const auto c = component(doubling(), 0);
  EXPECT_THROW(gradient(c, vec({0, 0})), NotDifferentiableHere);
  EXPECT_THROW(gradient(c, vec({0, 0}), DerivativeMethod::finite_difference),
               NotDifferentiableHere);
  EXPECT_THROW(jacobian(doubling(), vec({0, 0})), NotDifferentiableHere);
  EXPECT_NO_THROW(gradient(c, vec({1, 1})));
}

TEST(Gradient, ChainRuleThroughComposite) {
  const auto f = compose(affine_scalar(vec({1, -2}), 0), doubling());
  const Vector x = vec({1, 2});
  const Vector a = gradient(f, x, DerivativeMethod::analytic);
  const Vector d = gradient(f, x, DerivativeMethod::finite_difference);
  EXPECT_LE((a - d).norm(), 1e-7);
}

TEST(EikonalProfile, Examples) {
  const auto unit = eikonal_profile(affine_scalar(vec({0.6, 0.8}), 0),
                                    {vec({0, 0}), vec({1, 2}), vec({-3, 4})});
  for (double v : unit) EXPECT_NEAR(v, 1.0, 1e-15);
  // Oracle: |grad u| = 2 |x| for the saddle.
  const auto saddle = eikonal_profile(harmonic_power(2, HarmonicPart::real),
                                      {vec({1, 0}), vec({0, 1}), vec({1, 1})});
  EXPECT_DOUBLE_EQ(saddle[0], 2.0);
  EXPECT_DOUBLE_EQ(saddle[1], 2.0);
  EXPECT_DOUBLE_EQ(saddle[2], 2.0 * std::sqrt(2.0));
  for (double v : eikonal_profile(constant(2, 4.0), {vec({0, 0}), vec({9, 1})}))
    EXPECT_EQ(v, 0.0);
}

TEST(Gradient, AnalyticMatchesFiniteDifferenceOnGallery) {
  std::vector<Transform> gallery;
  for (int k = 1; k <= 4; ++k) {
    gallery.push_back(harmonic_power(k, HarmonicPart::real));
    gallery.push_back(harmonic_power(k, HarmonicPart::imaginary));
  }
  gallery.push_back(affine_scalar(vec({0.6, 0.8}), 1.0));
  gallery.push_back(affine_scalar(vec({1, -2, 0.5}), -1.0));
  gallery.push_back(coordinate_square(2, 1));
  gallery.push_back(cubic_perturbation(2, 1e-3));
  gallery.push_back(gaussian_bump(2));
  gallery.push_back(component(doubling(), 0));
  gallery.push_back(component(doubling(), 1));
  Substream rng(derive_key(3, "fd"), 0);
  for (const auto& u : gallery) {
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_point(rng, u.input_dim(), 1.0);
      const Vector a = gradient(u, x, DerivativeMethod::analytic);
      const Vector f = gradient(u, x, DerivativeMethod::finite_difference);
      EXPECT_LE((a - f).norm(), 1e-6 * std::max(1.0, a.norm())) << u.name();
    }
  }
}

TEST(Gradient, FiniteDifferenceIsSecondOrder) {
  // Smooth, non-polynomial field with known gradient.
  const auto u = gaussian_bump(2);
  const Vector x = vec({0.7, -0.4});
  const Vector exact = gradient(u, x, DerivativeMethod::analytic);
  double prev = 0;
  for (double h : {0.1, 0.05, 0.025}) {
    const double err =
        (gradient(u, x, DerivativeMethod::finite_difference, h) - exact).norm();
    if (prev > 0) {
      EXPECT_NEAR(prev / err, 4.0, 0.2);
    }
    prev = err;
  }
}

TEST(Affine, ExactlyLinear) {
  Matrix p(2, 2);
  p << 2, 0, 1, 1;
  const auto f = affine(p, vec({3, -1}));
  EXPECT_EQ(f(Vector::Zero(2)), vec({3, -1}));
  const Vector x = vec({0.25, -1.5}), y = vec({2.0, 0.5});
  EXPECT_LE((f(x + y) - f(x) - f(y) + f(Vector::Zero(2))).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(Affine, CompositionClosure) {
  Substream rng(derive_key(4, "compose"), 0);
  Matrix p1(2, 3), p2(3, 2);
  for (auto& v : p1.reshaped()) v = rng.normal();
  for (auto& v : p2.reshaped()) v = rng.normal();
  const AffineTransform outer(p1, random_point(rng, 2, 1));
  const AffineTransform inner(p2, random_point(rng, 3, 1));
  const AffineTransform merged = outer.compose(inner);
  const auto chained = compose(affine(outer.linear(), outer.offset()),
                               affine(inner.linear(), inner.offset()));
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_point(rng, 2, 3);
    Vector out(2);
    merged.evaluate(std::span<const double>(x.data(), 2),
                    std::span<double>(out.data(), 2));
    EXPECT_LE((out - chained(x)).cwiseAbs().maxCoeff(),
              1e-12 * (1 + out.cwiseAbs().maxCoeff()));
  }
}

TEST(Transform, DimensionMismatch) {
  const auto g = doubling();
  EXPECT_THROW(g(Vector::Zero(3)), DimensionMismatch);
  EXPECT_THROW(radial_lift(SphereMap::angle_multiply(2)).scalar(vec({1, 1})),
               DimensionMismatch);
}

TEST(RestrictToBox, RejectsOutside) {
  const auto f = restrict_to_box(harmonic_power(2, HarmonicPart::real),
                                 vec({-1, -1}), vec({1, 1}));
  EXPECT_TRUE(f.in_domain(vec({0.5, -1})));
  EXPECT_FALSE(f.in_domain(vec({1.5, 0})));
  EXPECT_THROW(f(vec({1.5, 0})), InvalidArgument);
}

TEST(Parse, NamesRoundTrip) {
  const std::vector<std::pair<std::string, std::size_t>> texts{
      {"identity", 2},
      {"affine(P=[[2,0],[1,1]],q=[3,-1])", 2},
      {"affine(P=[[2]],q=[3])", 1},
      {"affine(P=[0.6,0.8],q=0)", 2},
      {"radial_lift(identity)", 3},
      {"radial_lift(angle_multiply(2))", 2},
      {"radial_lift(rotation(theta=0.3))", 2},
      {"harmonic(re_z^2)", 2},
      {"harmonic(im_z^3)", 2},
      {"square(i=0)", 2},
      {"cubic(eps=0.001)", 2},
      {"constant(c=1)", 3},
      {"gaussian_bump", 2},
      {"component(0,radial_lift(angle_multiply(2)))", 2},
      {"compose(affine(P=[[1,1]],q=[0]),radial_lift(angle_multiply(2)))", 2},
      {"restrict(harmonic(re_z^2),lo=[-1,-1],hi=[1,1])", 2}};
  Substream rng(derive_key(5, "parse"), 0);
  for (const auto& [text, n] : texts) {
    const auto a = parse_transform(text, n);
    const auto b = parse_transform(a.name(), n);
    EXPECT_EQ(a.name(), b.name()) << text;
    for (int i = 0; i < 10; ++i) {
      const Vector x = random_point(rng, n, 0.5);
      if (!a.in_domain(x)) continue;
      EXPECT_EQ(a(x), b(x)) << text;
    }
  }
}

TEST(Parse, ValuesMatchFactories) {
  const auto f = parse_transform("affine(P=[[2]],q=[3])", 1);
  EXPECT_EQ(f(vec({1.5}))[0], 6.0);
  const auto g = parse_transform("radial_lift(angle_multiply(2))", 2);
  EXPECT_NEAR(g(vec({3, 4}))[0], -1.4, 1e-12);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_transform("affine(P=[[2]]", 1), InvalidArgument);
  EXPECT_THROW(parse_transform("nonsense", 2), InvalidArgument);
  EXPECT_THROW(parse_transform("harmonic(re_z^2)", 3), DimensionMismatch);
  EXPECT_THROW(parse_transform("affine(P=[[2,0],[0,2]],q=[0,0])", 3),
               DimensionMismatch);
  EXPECT_THROW(parse_transform("radial_lift(angle_multiply(0))", 2),
               InvalidArgument);
}
