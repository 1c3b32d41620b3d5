#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/process/ensemble_io.hpp"
#include "bmcheck/process/gaussian_law.hpp"
#include "bmcheck/process/simulate.hpp"
#include "bmcheck/transforms/catalog.hpp"
#include "bmcheck/transforms/sphere_map.hpp"

using namespace bmcheck;
using namespace bmcheck::process;
namespace tf = bmcheck::transforms;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Ensemble whose every point is the same vector x.
PathEnsemble constant_ensemble(const Vector& x, std::size_t paths,
                               std::size_t steps) {
  const auto d = static_cast<std::size_t>(x.size());
  std::vector<double> values;
  for (std::size_t i = 0; i < paths * (steps + 1); ++i)
    values.insert(values.end(), x.data(), x.data() + d);
  return PathEnsemble(TimeGrid::uniform(1.0, steps), paths, d,
                      std::move(values), 0, x);
}

}  // namespace

TEST(TimeGrid, UniformAndLookup) {
  const auto g = TimeGrid::uniform(2.0, 4);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[2], 1.0);
  EXPECT_EQ(g.index_of(1.5), 3u);
  EXPECT_FALSE(g.index_of(1.25).has_value());
  EXPECT_THROW(g.require_index(0.7), WindowNotOnGrid);
}

TEST(TimeGrid, RejectsBadTimes) {
  EXPECT_THROW(TimeGrid({0.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(TimeGrid({0.5, 1.0}), InvalidArgument);
  EXPECT_THROW(TimeGrid({0.0}), InvalidArgument);
}

TEST(GaussianLaw, RejectsAsymmetricAndIndefinite) {
  EXPECT_THROW(GaussianLaw(Vector::Zero(2), mat2(1, 0.5, 0.4, 1)),
               InvalidArgument);
  EXPECT_THROW(GaussianLaw(Vector::Zero(2), mat2(1, 2, 2, 1)),
               NotPositiveDefinite);
  EXPECT_THROW(GaussianLaw(Vector::Zero(3), Matrix::Identity(2, 2)),
               DimensionMismatch);
}

TEST(GaussianLaw, SingularLawNeedsOptIn) {
  EXPECT_THROW(GaussianLaw(Vector::Zero(2), Matrix::Zero(2, 2)),
               NotPositiveDefinite);
  const GaussianLaw degenerate(Vector::Zero(2), Matrix::Zero(2, 2), false);
  const auto e = sample_paths(degenerate, TimeGrid::uniform(1.0, 3), 4,
                              Vector::Zero(2), 1);
  for (double v : e.data()) EXPECT_EQ(v, 0.0);
}

TEST(TransitionDensity, StandardValues) {
  // Oracle: phi(0) = 1/sqrt(2 pi), planar density at 0 = 1/(2 pi),
  // N(0, 2) at 1 = exp(-1/4)/sqrt(4 pi).
  const double pi = std::numbers::pi;
  const auto std1 = GaussianLaw::standard(1);
  EXPECT_NEAR(transition_density(std1, 1.0, Vector::Zero(1), Vector::Zero(1)),
              1.0 / std::sqrt(2 * pi), 1e-15);
  EXPECT_NEAR(transition_density(std1, 1.0, Vector::Zero(1), Vector::Zero(1)),
              0.398942, 1e-6);
  const auto std2 = GaussianLaw::standard(2);
  EXPECT_NEAR(transition_density(std2, 1.0, Vector::Zero(2), Vector::Zero(2)),
              0.159155, 1e-6);
  Vector one(1);
  one << 1.0;
  EXPECT_NEAR(transition_density(std1, 2.0, Vector::Zero(1), one),
              std::exp(-0.25) / std::sqrt(4 * pi), 1e-15);
  // b = 1, A = 4, tau = 2, y = b tau: the exponent vanishes, 1/(4 sqrt(pi)).
  Vector b(1);
  b << 1.0;
  Matrix a(1, 1);
  a << 4.0;
  Vector y(1);
  y << 2.0;
  EXPECT_NEAR(transition_density(GaussianLaw(b, a), 2.0, Vector::Zero(1), y),
              1.0 / (4.0 * std::sqrt(pi)), 1e-15);
  EXPECT_NEAR(transition_density(GaussianLaw(b, a), 2.0, Vector::Zero(1), y),
              0.141047, 1e-6);
}

TEST(TransitionDensity, SingularCovarianceThrows) {
  const GaussianLaw degenerate(Vector::Zero(2), mat2(1, 1, 1, 1), false);
  EXPECT_THROW(
      transition_density(degenerate, 1.0, Vector::Zero(2), Vector::Zero(2)),
      SingularCovariance);
}

TEST(TransitionDensity, IntegratesToOneUnderImportanceSampling) {
  // Draw y from the wider proposal N(x, 4 tau A) and average p(y) / q(y).
  const GaussianLaw law(vec2(0.3, -0.2), mat2(2.0, 0.5, 0.5, 1.0));
  const double tau = 0.7;
  const Vector x = vec2(1.0, -1.0);
  const GaussianLaw proposal(Vector::Zero(2), 4.0 * law.covariance());
  Substream rng(derive_key(1, "is"), 0);
  const int n = 100000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    Vector z(2);
    z << rng.normal(), rng.normal();
    const Vector y = x + std::sqrt(tau) * proposal.factor() * z;
    const double w = transition_density(law, tau, x, y) /
                     transition_density(proposal, tau, x, y);
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, 1.0, 4 * se);
}

TEST(SamplePaths, StartsAtOriginAndIsReproducible) {
  const auto law = GaussianLaw::standard(2);
  const auto grid = TimeGrid::uniform(1.0, 10);
  const auto a = sample_paths(law, grid, 50, vec2(1, 2), 42);
  const auto b = sample_paths(law, grid, 50, vec2(1, 2), 42);
  const auto c = sample_paths(law, grid, 50, vec2(1, 2), 43);
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
  EXPECT_FALSE(std::equal(a.data().begin(), a.data().end(), c.data().begin()));
  for (std::size_t p = 0; p < 50; ++p) {
    EXPECT_EQ(a.point(p, 0)[0], 1.0);
    EXPECT_EQ(a.point(p, 0)[1], 2.0);
  }
}

TEST(SamplePaths, BitIdenticalAcrossThreadCounts) {
  const auto law = GaussianLaw(vec2(0.1, 0), mat2(1, 0.3, 0.3, 2));
  const auto grid = TimeGrid::uniform(2.0, 40);
  set_thread_count(1);
  const auto one = sample_paths(law, grid, 301, Vector::Zero(2), 7);
  set_thread_count(4);
  const auto four = sample_paths(law, grid, 301, Vector::Zero(2), 7);
  set_thread_count(1);
  EXPECT_TRUE(
      std::equal(one.data().begin(), one.data().end(), four.data().begin()));
}

TEST(SamplePaths, StandardMarginalMoments) {
  const std::size_t n = 100000;
  const auto e = sample_paths(GaussianLaw::standard(2), TimeGrid({0.0, 1.0}),
                              n, Vector::Zero(2), 2024);
  const SampleMatrix x = e.marginal(1);
  const Vector mean = sample_mean(x);
  const Matrix cov = sample_covariance(x);
  const double bound = 4.0 / std::sqrt(static_cast<double>(n));
  EXPECT_LE(mean.cwiseAbs().maxCoeff(), bound);
  EXPECT_LE((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.05);

  // Independent generator: the same bounds hold for an mt19937 sample, and
  // both estimates sit within sampling error of each other.
  std::mt19937_64 gen(99);
  std::normal_distribution<double> normal;
  SampleMatrix y(n, 2);
  for (std::size_t i = 0; i < n; ++i) y(i, 0) = normal(gen), y(i, 1) = normal(gen);
  const Matrix cov_ref = sample_covariance(y);
  EXPECT_LE(sample_mean(y).cwiseAbs().maxCoeff(), bound);
  EXPECT_LE((cov - cov_ref).cwiseAbs().maxCoeff(), 0.05);
}

TEST(SamplePaths, DriftAndVariance) {
  Vector b(1);
  b << 1.0;
  Matrix a(1, 1);
  a << 4.0;
  const auto e = sample_paths(GaussianLaw(b, a), TimeGrid({0.0, 2.0}), 100000,
                              Vector::Zero(1), 5);
  const SampleMatrix x = e.marginal(1);
  // Oracle: mean t b = 2, variance t A = 8.
  EXPECT_NEAR(sample_mean(x)[0], 2.0, 0.04);
  EXPECT_NEAR(sample_covariance(x)(0, 0), 8.0, 0.3);
}

TEST(SamplePaths, MarginalsExactAtEveryGridPoint) {
  const Matrix a = mat2(1.5, -0.4, -0.4, 0.8);
  const Vector b = vec2(0.5, -1.0);
  const std::size_t n = 100000;
  const auto grid = TimeGrid({0.0, 0.1, 0.35, 1.0, 2.5});
  const auto e = sample_paths(GaussianLaw(b, a), grid, n, Vector::Zero(2), 11);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid[k];
    const SampleMatrix x = e.marginal(k);
    const Vector mean = sample_mean(x);
    const Matrix cov = sample_covariance(x);
    for (int j = 0; j < 2; ++j) {
      const double se_mean = std::sqrt(t * a(j, j) / n);
      EXPECT_NEAR(mean[j], t * b[j], 5 * se_mean);
      for (int l = 0; l < 2; ++l) {
        const double se_cov =
            t * std::sqrt((a(j, j) * a(l, l) + a(j, l) * a(j, l)) / n);
        EXPECT_NEAR(cov(j, l), t * a(j, l), 5 * se_cov);
      }
    }
  }
}

TEST(ApplyTransform, IdentityLeavesPathsUnchanged) {
  const auto e = sample_paths(GaussianLaw::standard(2), TimeGrid::uniform(1, 5),
                              20, Vector::Zero(2), 3);
  const auto f = apply_transform(e, tf::identity(2));
  EXPECT_TRUE(std::equal(e.data().begin(), e.data().end(), f.data().begin()));
}

TEST(ApplyTransform, AffineOnKnownPath) {
  std::vector<double> values{0.0, 1.5};
  PathEnsemble e(TimeGrid({0.0, 1.0}), 1, 1, values, 0, Vector::Zero(1));
  Matrix p(1, 1);
  p << 2.0;
  Vector q(1);
  q << 3.0;
  const auto f = apply_transform(e, tf::affine(p, q));
  EXPECT_EQ(f.point(0, 0)[0], 3.0);
  EXPECT_EQ(f.point(0, 1)[0], 6.0);
  EXPECT_EQ(f.origin()[0], 3.0);
}

TEST(ApplyTransform, AngleDoublingOnConstantPath) {
  auto e = constant_ensemble(vec2(3, 4), 3, 2);
  const auto g = tf::radial_lift(tf::SphereMap::angle_multiply(2));
  const auto copy = apply_transform(e, g);
  const auto moved = apply_transform(std::move(e), g);
  // Oracle: ((x1^2 - x2^2)/r, 2 x1 x2 / r) at r = 5.
  for (const auto* out : {&copy, &moved})
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(out->point(p, k)[0], (9.0 - 16.0) / 5.0, 1e-14);
        EXPECT_NEAR(out->point(p, k)[1], 24.0 / 5.0, 1e-14);
      }
}

TEST(ApplyTransform, DimensionMismatch) {
  const auto e = constant_ensemble(Vector::Zero(3), 2, 1);
  EXPECT_THROW(apply_transform(e, tf::identity(2)), DimensionMismatch);
}

TEST(PathEnsemble, IncrementsMatchPointDifferences) {
  const auto e = sample_paths(GaussianLaw::standard(2), TimeGrid::uniform(2, 4),
                              10, Vector::Zero(2), 8);
  const SampleMatrix inc = e.increments(1, 3);
  for (std::size_t p = 0; p < 10; ++p)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_EQ(inc(p, j), e.point(p, 3)[j] - e.point(p, 1)[j]);
}

TEST(EnsembleIo, BinaryRoundTrip) {
  const auto e = sample_paths(GaussianLaw::standard(3), TimeGrid({0, 0.2, 1.1}),
                              17, Vector::Zero(3), 4);
  std::stringstream buf;
  write_binary(e, buf);
  EXPECT_EQ(buf.str().size(), 8u * (3 + 3 + 17 * 3 * 3));
  const auto back = read_binary(buf);
  EXPECT_EQ(back.num_paths(), 17u);
  EXPECT_EQ(back.dimension(), 3u);
  EXPECT_EQ(back.grid().times(), e.grid().times());
  EXPECT_TRUE(std::equal(e.data().begin(), e.data().end(), back.data().begin()));
}

TEST(EnsembleIo, TruncatedBinaryRejected) {
  const auto e = sample_paths(GaussianLaw::standard(1), TimeGrid::uniform(1, 2),
                              3, Vector::Zero(1), 4);
  std::stringstream buf;
  write_binary(e, buf);
  std::string s = buf.str();
  s.resize(s.size() - 8);
  std::stringstream cut(s);
  EXPECT_THROW(read_binary(cut), InvalidArgument);
}

TEST(EnsembleIo, CsvLayout) {
  const auto e = sample_paths(GaussianLaw::standard(2), TimeGrid::uniform(1, 2),
                              3, Vector::Zero(2), 4);
  std::stringstream out;
  write_csv(e, out);
  std::string line;
  std::getline(out, line);
  EXPECT_EQ(line, "path,step,time,x0,x1");
  int rows = 0;
  while (std::getline(out, line)) ++rows;
  EXPECT_EQ(rows, 9);
}
