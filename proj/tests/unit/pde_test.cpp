#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/pde/grid_domain.hpp"
#include "bmcheck/pde/monte_carlo.hpp"
#include "bmcheck/pde/residuals.hpp"
#include "bmcheck/transforms/catalog.hpp"
#include "bmcheck/transforms/differentiation.hpp"

using namespace bmcheck;
using namespace bmcheck::pde;
namespace tf = bmcheck::transforms;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

GridDomain square() { return GridDomain::box(vec({-1, -1}), vec({1, 1}), 0.05); }

tf::Transform saddle() { return tf::harmonic_power(2, tf::HarmonicPart::real); }

}  // namespace

TEST(GridDomain, ShapeAndConnectivity) {
  const auto d = square();
  EXPECT_EQ(d.shape(), (std::vector<std::size_t>{41, 41}));
  EXPECT_EQ(d.size(), 41u * 41u);
  EXPECT_TRUE(d.connected());
  EXPECT_TRUE(GridDomain::ball(vec({0, 0}), 1, 0.05).connected());
  EXPECT_TRUE(GridDomain::annulus(vec({0, 0, 0}), 0.5, 1, 0.1).connected());
  const auto pts = d.points();
  EXPECT_EQ(pts.front(), vec({-1, -1}));
  EXPECT_NEAR(pts.back()[0], 1.0, 1e-12);
}

TEST(GridDomain, TwoDisksAreDisconnected) {
  const GridDomain d(vec({-1, -1}), vec({1, 1}), 0.05,
                     [](const Vector& x) {
                       return (x - vec({-0.5, 0})).norm() < 0.3 ||
                              (x - vec({0.5, 0})).norm() < 0.3;
                     },
                     "two_disks");
  EXPECT_FALSE(d.connected());
  EXPECT_THROW(gradient_constancy(tf::affine_scalar(vec({1, 0}), 0), d), DisconnectedMask);
}

TEST(Laplacian, AffineVanishes) {
  const auto r = laplacian_residual(tf::affine_scalar(vec({0.6, 0.8}), 3.0), square());
  EXPECT_LE(r.max_abs, 1e-9);
  EXPECT_GE(r.max_abs, r.mean_abs);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Laplacian, SaddleExactOnQuadratics) {
  EXPECT_LE(laplacian_residual(saddle(), square()).max_abs, 1e-8);
}

TEST(Laplacian, CoordinateSquareIsTwo) {
  const auto r = laplacian_residual(tf::coordinate_square(2, 0), square());
  EXPECT_NEAR(r.max_abs, 2.0, 1e-8);
  EXPECT_NEAR(r.mean_abs, 2.0, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::reject);
}

TEST(Laplacian, HaloOutsideEvaluationDomain) {
  const auto u = tf::restrict_to_box(saddle(), vec({-1, -1}), vec({1, 1}));
  EXPECT_THROW(laplacian_residual(u, square()), HaloOutsideEvaluationDomain);
  EXPECT_NO_THROW(
      laplacian_residual(u, GridDomain::box(vec({-0.9, -0.9}), vec({0.9, 0.9}), 0.05)));
}

TEST(Eikonal, UnitAffine) {
  EXPECT_LE(eikonal_residual(tf::affine_scalar(vec({0.6, 0.8}), 0), square(), 1.0).max_abs,
            1e-9);
}

TEST(Eikonal, SaddlePointwise) {
  const auto single = GridDomain::box(vec({1, 0}), vec({1, 0}), 0.05);
  const auto r = eikonal_residual(saddle(), single, 1.0);
  EXPECT_DOUBLE_EQ(r.max_abs, 1.0);
  EXPECT_EQ(r.argmax, vec({1, 0}));
}

TEST(Eikonal, ConstantWithZeroTarget) {
  EXPECT_LE(eikonal_residual(tf::constant(2, 5.0), square(), 0.0).max_abs, 1e-9);
}

TEST(Eikonal, RadialLiftOriginExcluded) {
  const auto g = tf::radial_lift(tf::SphereMap::angle_multiply(2));
  const auto d = GridDomain::box(vec({-0.5, -0.5}), vec({0.5, 0.5}), 0.25);
  const auto r = eikonal_residual(tf::component(g, 0), d, 1.0);
  ASSERT_EQ(r.excluded.size(), 1u);
  EXPECT_EQ(r.excluded[0], vec({0, 0}));
}

TEST(GradientConstancy, Examples) {
  const auto [p, r] = gradient_constancy(tf::affine_scalar(vec({0.6, 0.8}), 1), square());
  EXPECT_NEAR(p[0], 0.6, 1e-12);
  EXPECT_NEAR(p[1], 0.8, 1e-12);
  EXPECT_LE(r.max_abs, 1e-9);
  // grad u = (2 x1, -2 x2) ranges over [-2,2]^2; mean 0, corner norm 2 sqrt 2.
  const auto [ps, rs] = gradient_constancy(saddle(), square());
  EXPECT_GE(rs.max_abs, 2.0);
  EXPECT_NEAR(rs.max_abs, 2 * std::sqrt(2.0), 1e-9);
  const auto [pc, rc] = gradient_constancy(tf::constant(2, -1), square());
  EXPECT_EQ(pc.norm(), 0.0);
  EXPECT_LE(rc.max_abs, 1e-9);
}

TEST(GradientConstancy, LaplaceAndEikonalImplyAffine) {
  std::vector<tf::Transform> catalog{
      tf::affine_scalar(vec({0.6, 0.8}), 2),
      tf::affine_scalar(vec({1, 0}), 0),
      tf::affine_scalar(vec({3, 4}), 0),
      tf::harmonic_power(1, tf::HarmonicPart::real),
      tf::harmonic_power(1, tf::HarmonicPart::imaginary),
      tf::harmonic_power(2, tf::HarmonicPart::real),
      tf::harmonic_power(2, tf::HarmonicPart::imaginary),
      tf::harmonic_power(3, tf::HarmonicPart::real),
      tf::coordinate_square(2, 0),
      tf::cubic_perturbation(2, 1e-3),
      tf::constant(2, 1.0),
      tf::gaussian_bump(2),
      tf::component(tf::radial_lift(tf::SphereMap::angle_multiply(2)), 0),
      tf::component(tf::radial_lift(tf::SphereMap::planar_rotation(0.3)), 0),
  };
  const auto d = square();
  int certified = 0;
  for (const auto& u : catalog) {
    const auto lap = laplacian_residual(u, d, 1e-6);
    // A constant gradient norm must equal its value at any grid point.
    const double target = tf::gradient(u, vec({-1, -1})).norm();
    const auto eik = eikonal_residual(u, d, target, 1e-6);
    if (lap.verdict == Verdict::pass && eik.verdict == Verdict::pass) {
      ++certified;
      EXPECT_EQ(gradient_constancy(u, d, 1e-4).second.verdict, Verdict::pass) << u.name();
    }
  }
  EXPECT_GE(certified, 4);
  EXPECT_LE(laplacian_residual(saddle(), d).max_abs, 1e-8);
  EXPECT_GE(eikonal_residual(saddle(), d, 1.0).max_abs, 1.0);
}

TEST(BallVolume, ClosedFormValues) {
  EXPECT_NEAR(ball_volume(1), 2.0, 2e-12);
  EXPECT_NEAR(ball_volume(2), std::numbers::pi, std::numbers::pi * 1e-12);
  EXPECT_NEAR(ball_volume(3), 4 * std::numbers::pi / 3, 4.2e-12);
  EXPECT_NEAR(ball_volume_gamma_half(2), ball_volume(2), 1e-12);
  EXPECT_NEAR(ball_volume_gamma_half(3), 2 * std::numbers::pi, 1e-12);
  EXPECT_THROW(ball_volume(0), InvalidArgument);
}

TEST(BallVolume, Recursion) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const double h = static_cast<double>(n) / 2;
    const double step = std::sqrt(std::numbers::pi) * std::tgamma(h + 0.5) / std::tgamma(h + 1);
    EXPECT_NEAR(ball_volume(n), ball_volume(n - 1) * step, 1e-12 * ball_volume(n));
  }
}

TEST(BallVolume, CubeRejectionAgrees) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = ball_volume_check(n, 400000, 3);
    EXPECT_EQ(r.verdict, Verdict::pass) << n << " " << *r.signed_residual;
    if (n == 3) {
      // Separates the closed form from the Gamma(n/2) variant 2 pi.
      EXPECT_GT(std::abs(r.details["estimate"].get<double>() - 2 * std::numbers::pi),
                20 * *r.standard_error);
    }
  }
}

TEST(MeanValue, Examples) {
  const auto a = mean_value_check(tf::affine_scalar(vec({1, -2}), 0.5), vec({0.2, 0.1}), 0.7,
                                  100000, 1);
  EXPECT_EQ(a.verdict, Verdict::pass);
  const auto s = mean_value_check(saddle(), vec({0.3, 0.4}), 0.5, 200000, 2);
  EXPECT_NEAR(s.details["reference"].get<double>(), -0.07, 1e-15);
  EXPECT_LE(std::abs(*s.signed_residual), 3 * *s.standard_error);
  // Average of x1^2 over the unit disk is 1/4.
  const auto q = mean_value_check(tf::coordinate_square(2, 0), vec({0, 0}), 1, 200000, 3);
  EXPECT_NEAR(*q.signed_residual, 0.25, 3 * *q.standard_error);
  EXPECT_EQ(q.verdict, Verdict::reject);
}

TEST(MeanValue, HarmonicGalleryAtRandomBalls) {
  std::vector<tf::Transform> gallery;
  for (int k = 1; k <= 4; ++k) {
    gallery.push_back(tf::harmonic_power(k, tf::HarmonicPart::real));
    gallery.push_back(tf::harmonic_power(k, tf::HarmonicPart::imaginary));
  }
  gallery.push_back(tf::affine_scalar(vec({0.6, 0.8}), -1));
  Substream rng(derive_key(4, "balls"), 0);
  int outside = 0, total = 0;
  for (const auto& u : gallery)
    for (int i = 0; i < 20; ++i) {
      const Vector x = vec({rng.normal(), rng.normal()});
      const double r = 0.1 + 2 * rng.uniform();
      const auto rep = mean_value_check(u, x, r, 20000, 100 + static_cast<std::uint64_t>(total));
      ++total;
      if (rep.verdict == Verdict::reject) ++outside;
    }
  // 3-sigma band: about 0.3% of checks fall outside by chance.
  EXPECT_LE(outside, 2) << "of " << total;
}

TEST(Smoothing, Examples) {
  const auto law1 = process::GaussianLaw::standard(1);
  const auto sq = tf::coordinate_square(1, 0);
  const auto ok = smoothing_representation_check(sq, law1, 1, vec({0}), 1, 400000, 1);
  EXPECT_LE(std::abs(*ok.signed_residual), 3 * *ok.standard_error);
  const auto wrong = smoothing_representation_check(sq, law1, 1, vec({0}), 0, 400000, 1);
  EXPECT_NEAR(*wrong.signed_residual, 1.0, 3 * *wrong.standard_error);
  EXPECT_EQ(wrong.verdict, Verdict::reject);
  const auto aff = smoothing_representation_check(tf::affine_scalar(vec({1, 2}), 3),
                                                  process::GaussianLaw::standard(2), 0.5,
                                                  vec({1, -1}), 0, 100000, 2);
  EXPECT_EQ(aff.verdict, Verdict::pass);
}

TEST(Jensen, AffineHasNoGap) {
  const auto r = jensen_gap(tf::affine_scalar(vec({0.6, 0.8}), 0),
                            process::GaussianLaw::standard(2), 1, vec({0, 0}), 100000, 1);
  EXPECT_LE(std::abs(r.gap), 3 * r.gap_standard_error + 1e-12);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_NEAR(r.p_x[0], 0.6, 1e-12);
}

TEST(Jensen, SaddleChiMean) {
  const auto r = jensen_gap(saddle(), process::GaussianLaw::standard(2), 1, vec({0, 0}),
                            200000, 2);
  // |grad u| = 2 |Z|, E|Z| = sqrt(pi/2) for a standard planar normal.
  const double oracle = 2 * std::sqrt(std::numbers::pi / 2);
  EXPECT_NEAR(oracle, 2.5066, 1e-4);
  EXPECT_NEAR(r.gap, oracle, 3 * r.gap_standard_error);
  EXPECT_NEAR(r.lhs, oracle, 3 * r.lhs_standard_error);
  EXPECT_EQ(r.verdict, Verdict::reject);
}

TEST(Jensen, CollinearGradientsGiveZeroGap) {
  // grad f = (1 + 3e-3 x1^2, 0) always points along e1.
  const auto r = jensen_gap(tf::cubic_perturbation(2, 1e-3), process::GaussianLaw::standard(2),
                            1, vec({0, 0}), 100000, 3);
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Jensen, GapNeverSignificantlyNegative) {
  const auto g = tf::component(tf::radial_lift(tf::SphereMap::angle_multiply(2)), 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = jensen_gap(g, process::GaussianLaw::standard(2), 0.5, vec({0.1, 0.2}),
                              20000, seed);
    EXPECT_GE(r.gap, -3 * r.gap_standard_error);
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  set_thread_count(1);
  const auto a = mean_value_check(saddle(), vec({0.3, 0.4}), 0.5, 100000, 9);
  set_thread_count(4);
  const auto b = mean_value_check(saddle(), vec({0.3, 0.4}), 0.5, 100000, 9);
  set_thread_count(1);
  EXPECT_EQ(*a.signed_residual, *b.signed_residual);
  EXPECT_EQ(*a.standard_error, *b.standard_error);
}
