#include "bmcheck/process/simulate.hpp"

#include <cmath>
#include <vector>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"

namespace bmcheck::process {

PathEnsemble sample_paths(const GaussianLaw& law, const TimeGrid& grid,
                          std::size_t paths, const Vector& origin,
                          std::uint64_t seed) {
  const std::size_t d = law.dimension();
  if (paths < 1) throw InvalidArgument("sample_paths: need at least one path");
  if (static_cast<std::size_t>(origin.size()) != d)
    throw DimensionMismatch("sample_paths: origin has wrong dimension");

  const std::size_t times = grid.size();
  std::vector<double> dt(times - 1), sqrt_dt(times - 1);
  for (std::size_t k = 0; k + 1 < times; ++k) {
    dt[k] = grid[k + 1] - grid[k];
    sqrt_dt[k] = std::sqrt(dt[k]);
  }
  // Row-major copy of the factor for the inner loop.
  const Matrix& l = law.factor();
  std::vector<double> factor(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      factor[i * d + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  std::vector<double> drift(d), start(d);
  for (std::size_t j = 0; j < d; ++j) {
    drift[j] = law.drift()[static_cast<Eigen::Index>(j)];
    start[j] = origin[static_cast<Eigen::Index>(j)];
  }

  const std::uint64_t key = derive_key(seed, "paths");
  std::vector<double> values(paths * times * d);
  parallel_ranges(paths, [&](std::size_t begin, std::size_t end) {
    std::vector<double> z(d);
    for (std::size_t p = begin; p < end; ++p) {
      double* row = values.data() + p * times * d;
      std::copy(start.begin(), start.end(), row);
      for (std::size_t k = 0; k + 1 < times; ++k) {
        Substream rng(key, p, static_cast<std::uint32_t>(k));
        for (auto& zj : z) zj = rng.normal();
        const double* prev = row + k * d;
        double* next = row + (k + 1) * d;
        for (std::size_t i = 0; i < d; ++i) {
          double noise = 0.0;
          for (std::size_t j = 0; j < d; ++j) noise += factor[i * d + j] * z[j];
          next[i] = prev[i] + dt[k] * drift[i] + sqrt_dt[k] * noise;
        }
      }
    }
  });
  return PathEnsemble(grid, paths, d, std::move(values), seed, origin);
}

namespace {

void require_input(const PathEnsemble& ensemble, const transforms::Transform& f) {
  if (f.input_dim() != ensemble.dimension())
    throw DimensionMismatch("apply_transform: " + f.name() + " expects R^" +
                            std::to_string(f.input_dim()) + ", ensemble is R^" +
                            std::to_string(ensemble.dimension()));
}

}  // namespace

PathEnsemble apply_transform(const PathEnsemble& ensemble,
                             const transforms::Transform& f) {
  require_input(ensemble, f);
  const std::size_t d = ensemble.dimension(), m = f.output_dim();
  const std::size_t points = ensemble.num_paths() * ensemble.num_times();
  const auto in = ensemble.data();
  std::vector<double> out(points * m);
  parallel_ranges(points, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      f.impl().evaluate(in.subspan(i * d, d), {out.data() + i * m, m});
  });
  const Vector origin = f(ensemble.origin());
  return PathEnsemble(ensemble.grid(), ensemble.num_paths(), m, std::move(out),
                      ensemble.seed(), origin);
}

PathEnsemble apply_transform(PathEnsemble&& ensemble,
                             const transforms::Transform& f) {
  require_input(ensemble, f);
  if (f.output_dim() != ensemble.dimension()) return apply_transform(ensemble, f);
  const std::size_t d = ensemble.dimension();
  const std::size_t points = ensemble.num_paths() * ensemble.num_times();
  const Vector origin = f(ensemble.origin());
  TimeGrid grid = ensemble.grid();
  const std::size_t paths = ensemble.num_paths();
  const std::uint64_t seed = ensemble.seed();
  std::vector<double> values = std::move(ensemble).release_values();
  parallel_ranges(points, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch(d);
    for (std::size_t i = begin; i < end; ++i) {
      std::copy_n(values.data() + i * d, d, scratch.begin());
      f.impl().evaluate(scratch, {values.data() + i * d, d});
    }
  });
  return PathEnsemble(std::move(grid), paths, d, std::move(values), seed, origin);
}

}  // namespace bmcheck::process
