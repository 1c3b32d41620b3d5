#include "bmcheck/conformance/dcov.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"

namespace bmcheck::conformance {
namespace {

Matrix centred_distances(const SampleMatrix& x) {
  const Eigen::Index n = x.rows();
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = (x.row(i) - x.row(j)).norm();
  const Vector row_mean = a.rowwise().mean();
  const double grand = row_mean.mean();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      a(i, j) += grand - row_mean[i] - row_mean[j];
  return a;
}

void require_paired(const SampleMatrix& x, const SampleMatrix& y) {
  if (x.rows() != y.rows())
    throw DimensionMismatch("distance covariance: samples must be paired");
  if (x.rows() < 2) throw InvalidArgument("distance covariance: need two rows");
}

}  // namespace

double distance_covariance(const SampleMatrix& x, const SampleMatrix& y) {
  require_paired(x, y);
  const double n = static_cast<double>(x.rows());
  return centred_distances(x).cwiseProduct(centred_distances(y)).sum() / (n * n);
}

PermutationResult dcov_permutation_test(const SampleMatrix& x,
                                        const SampleMatrix& y,
                                        std::size_t permutations,
                                        std::uint64_t key) {
  require_paired(x, y);
  const Matrix a = centred_distances(x);
  const Matrix b = centred_distances(y);
  const auto n = static_cast<std::size_t>(x.rows());
  const double scale = 1.0 / static_cast<double>(n);

  PermutationResult result;
  result.statistic = a.cwiseProduct(b).sum() * scale;

  std::vector<double> null(permutations);
  parallel_ranges(permutations, [&](std::size_t begin, std::size_t end) {
    std::vector<Eigen::Index> perm(n);
    for (std::size_t r = begin; r < end; ++r) {
      std::iota(perm.begin(), perm.end(), Eigen::Index{0});
      Substream rng(key, r);
      for (std::size_t i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double* bj = b.col(perm[j]).data();
        const double* aj = a.col(static_cast<Eigen::Index>(j)).data();
        for (std::size_t i = 0; i < n; ++i) s += aj[i] * bj[perm[i]];
      }
      null[r] = s * scale;
    }
  });
  const double cut = result.statistic - 1e-12 * std::abs(result.statistic);
  result.exceedances = static_cast<std::size_t>(
      std::count_if(null.begin(), null.end(), [&](double v) { return v >= cut; }));
  result.p_value = static_cast<double>(1 + result.exceedances) /
                   static_cast<double>(permutations + 1);
  return result;
}

}  // namespace bmcheck::conformance
