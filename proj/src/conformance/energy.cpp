#include "bmcheck/conformance/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"

namespace bmcheck::conformance {
namespace {

std::vector<double> project(const SampleMatrix& x, const Vector& u) {
  std::vector<double> out(static_cast<std::size_t>(x.rows()));
  Eigen::Map<Vector>(out.data(), x.rows()) = x * u;
  return out;
}

// Pooled values of one projection in sorted order, with the gaps between
// consecutive values and the pooled index of each sorted entry.
struct SortedProjection {
  std::vector<std::uint32_t> order;
  std::vector<double> gaps;
};

SortedProjection sort_pooled(std::vector<double> pooled) {
  SortedProjection s;
  s.order.resize(pooled.size());
  std::iota(s.order.begin(), s.order.end(), 0u);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return pooled[a] < pooled[b]; });
  s.gaps.resize(pooled.size() > 0 ? pooled.size() - 1 : 0);
  for (std::size_t k = 0; k + 1 < pooled.size(); ++k)
    s.gaps[k] = pooled[s.order[k + 1]] - pooled[s.order[k]];
  return s;
}

// 2 * sum_k (F_k - G_k)^2 * gap_k, where in_x[i] marks pooled index i as
// belonging to the first sample.
double scan(const SortedProjection& s, const std::vector<std::uint8_t>& in_x,
            std::size_t n, std::size_t m) {
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  double cx = 0, cy = 0, acc = 0;
  for (std::size_t k = 0; k < s.gaps.size(); ++k) {
    if (in_x[s.order[k]])
      cx += 1;
    else
      cy += 1;
    const double diff = cx * inv_n - cy * inv_m;
    acc += diff * diff * s.gaps[k];
  }
  return 2.0 * acc;
}

void require_samples(const SampleMatrix& x, const SampleMatrix& y) {
  if (x.cols() != y.cols())
    throw DimensionMismatch("energy distance: samples differ in dimension");
  if (x.rows() < 1 || y.rows() < 1)
    throw InvalidArgument("energy distance: empty sample");
}

}  // namespace

std::vector<Vector> projection_directions(std::size_t d, std::size_t count) {
  if (d < 1 || count < 1)
    throw InvalidArgument("projection_directions: need d >= 1 and count >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  if (d == 1) return {Vector::Ones(1)};
  std::vector<Vector> dirs;
  dirs.reserve(count);
  if (d == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Vector u(2);
      u << std::cos(a), std::sin(a);
      dirs.push_back(u);
    }
    return dirs;
  }
  Substream rng(derive_key(0, "projections", d), count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector u(n);
    for (auto& v : u) v = rng.normal();
    dirs.push_back(u / u.norm());
  }
  return dirs;
}

double sphere_projection_constant(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::exp(std::lgamma(h) - std::lgamma(h + 0.5)) / std::sqrt(std::numbers::pi);
}

double energy_distance_1d(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InvalidArgument("energy distance: empty sample");
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::vector<std::uint8_t> in_x(pooled.size(), 0);
  std::fill(in_x.begin(), in_x.begin() + static_cast<std::ptrdiff_t>(x.size()), 1);
  return scan(sort_pooled(std::move(pooled)), in_x, x.size(), y.size());
}

double sliced_energy_distance(const SampleMatrix& x, const SampleMatrix& y,
                              const std::vector<Vector>& directions) {
  require_samples(x, y);
  double total = 0;
  for (const auto& u : directions) {
    const auto px = project(x, u), py = project(y, u);
    total += energy_distance_1d(px, py);
  }
  return total / static_cast<double>(directions.size()) /
         sphere_projection_constant(static_cast<std::size_t>(x.cols()));
}

PermutationResult energy_permutation_test(const SampleMatrix& x,
                                          const SampleMatrix& y,
                                          const std::vector<Vector>& directions,
                                          std::size_t permutations,
                                          std::uint64_t key) {
  require_samples(x, y);
  const auto n = static_cast<std::size_t>(x.rows());
  const auto m = static_cast<std::size_t>(y.rows());
  const std::size_t total = n + m;
  if (total > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("energy_permutation_test: sample too large");

  std::vector<SortedProjection> sorted(directions.size());
  parallel_for(directions.size(), [&](std::size_t l) {
    std::vector<double> pooled = project(x, directions[l]);
    const auto py = project(y, directions[l]);
    pooled.insert(pooled.end(), py.begin(), py.end());
    sorted[l] = sort_pooled(std::move(pooled));
  });

  const double scale = static_cast<double>(n) * static_cast<double>(m) /
                       static_cast<double>(total) /
                       static_cast<double>(directions.size()) /
                       sphere_projection_constant(static_cast<std::size_t>(x.cols()));
  auto statistic = [&](const std::vector<std::uint8_t>& in_x) {
    double s = 0;
    for (const auto& p : sorted) s += scan(p, in_x, n, m);
    return s * scale;
  };

  std::vector<std::uint8_t> labels(total, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n), 1);
  PermutationResult result;
  result.statistic = statistic(labels);

  std::vector<double> null(permutations);
  parallel_ranges(permutations, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> perm(total);
    for (std::size_t b = begin; b < end; ++b) {
      perm = labels;
      Substream rng(key, b);
      for (std::size_t i = total - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      null[b] = statistic(perm);
    }
  });
  // Ties up to rounding count as exceedances.
  const double cut = result.statistic * (1.0 - 1e-12);
  result.exceedances = static_cast<std::size_t>(
      std::count_if(null.begin(), null.end(), [&](double v) { return v >= cut; }));
  result.p_value = static_cast<double>(1 + result.exceedances) /
                   static_cast<double>(permutations + 1);
  return result;
}

double energy_gof_statistic(const SampleMatrix& whitened,
                            const std::vector<Vector>& directions) {
  const auto n = static_cast<std::size_t>(whitened.rows());
  if (n < 2) throw InvalidArgument("energy_gof_statistic: need at least two rows");
  const double nd = static_cast<double>(n);
  const double e_zz = 2.0 / std::sqrt(std::numbers::pi);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double total = 0;
  for (const auto& u : directions) {
    std::vector<double> y = project(whitened, u);
    std::sort(y.begin(), y.end());
    double cross = 0, within = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = y[k];
      const double cdf = 0.5 * std::erfc(-v * inv_sqrt2);
      const double pdf = inv_sqrt2pi * std::exp(-0.5 * v * v);
      cross += 2.0 * v * cdf + 2.0 * pdf - v;
      within += (2.0 * static_cast<double>(k) - nd + 1.0) * v;
    }
    // sum_ij |y_i - y_j| = 2 sum_k (2k - n + 1) y_(k)
    total += 2.0 * cross / nd - e_zz - 2.0 * within / (nd * nd);
  }
  return nd * total / static_cast<double>(directions.size());
}

}  // namespace bmcheck::conformance
