#include "bmcheck/conformance/qv.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "bmcheck/common/errors.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/process/simulate.hpp"

namespace bmcheck::conformance {
namespace {

using process::PathEnsemble;

// Realized QV of one coordinate along every path: qv[p * (K+1) + k].
std::vector<double> realized_qv(const PathEnsemble& e, std::size_t c, bool& monotone) {
  const std::size_t n = e.num_paths(), times = e.num_times(), d = e.dimension();
  std::vector<double> qv(n * times);
  std::vector<std::uint8_t> ok(n, 1);
  const auto data = e.data();
  parallel_for(n, [&](std::size_t p) {
    const double* x = data.data() + p * times * d;
    double* q = qv.data() + p * times;
    q[0] = 0.0;
    for (std::size_t k = 1; k < times; ++k) {
      const double dx = x[k * d + c] - x[(k - 1) * d + c];
      q[k] = q[k - 1] + dx * dx;
      if (q[k] < q[k - 1]) ok[p] = 0;
    }
  });
  monotone = std::all_of(ok.begin(), ok.end(), [](std::uint8_t v) { return v != 0; });
  return qv;
}

double slope(const std::vector<double>& qv, std::size_t n, std::size_t times,
             double horizon) {
  double s = 0;
  for (std::size_t p = 0; p < n; ++p) s += qv[p * times + times - 1];
  return s / static_cast<double>(n) / horizon;
}

std::vector<double> path_residuals(const std::vector<double>& qv,
                                   const process::TimeGrid& grid, std::size_t n,
                                   double sigma2) {
  const std::size_t times = grid.size();
  std::vector<double> per_path(n);
  parallel_for(n, [&](std::size_t p) {
    double worst = 0;
    for (std::size_t k = 1; k < times; ++k) {
      const double ref = sigma2 * grid[k];
      worst = std::max(worst, std::abs(qv[p * times + k] - ref) / (1.0 + ref));
    }
    per_path[p] = worst;
  });
  return per_path;
}

double mean_residual(const std::vector<double>& qv, const process::TimeGrid& grid,
                     std::size_t n, double sigma2) {
  double s = 0;
  for (double v : path_residuals(qv, grid, n, sigma2)) s += v;
  return s / static_cast<double>(n);
}

}  // namespace

double qv_residual(const PathEnsemble& ensemble, std::size_t coordinate,
                   double& sigma2) {
  bool monotone = true;
  const auto qv = realized_qv(ensemble, coordinate, monotone);
  sigma2 = slope(qv, ensemble.num_paths(), ensemble.num_times(),
                 ensemble.grid().horizon());
  return mean_residual(qv, ensemble.grid(), ensemble.num_paths(), sigma2);
}

QVReport qv_linearity(const PathEnsemble& ensemble, const TestOptions& options) {
  const auto& grid = ensemble.grid();
  if (grid.steps() < 100) throw InvalidArgument("qv_linearity: need K >= 100 steps");
  if (options.qv_calibration_runs < 2 || options.qv_calibration_paths < 1)
    throw InvalidArgument("qv_linearity: calibration needs runs >= 2 and paths >= 1");
  const std::size_t n = ensemble.num_paths(), times = ensemble.num_times();
  const std::size_t n_cal = std::min(n, options.qv_calibration_paths);

  const double z = boost::math::quantile(
      boost::math::complement(boost::math::normal(),
                              options.alpha / static_cast<double>(ensemble.dimension())));

  QVReport out;
  std::size_t worst = 0;
  double worst_ratio = -1;
  for (std::size_t c = 0; c < ensemble.dimension(); ++c) {
    bool monotone = true;
    const auto qv = realized_qv(ensemble, c, monotone);
    out.monotone = out.monotone && monotone;
    const double s2 = slope(qv, n, times, grid.horizon());
    std::vector<double> curve(times, 0.0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t k = 0; k < times; ++k) curve[k] += qv[p * times + k];
    for (auto& v : curve) v /= static_cast<double>(n);
    const double res = mean_residual(qv, grid, n, s2);

    Matrix var(1, 1);
    var << s2;
    const process::GaussianLaw law(Vector::Zero(1), var, false);
    const auto key = derive_key(options.seed, "qv_calibration", c);
    // Pooled per-path residuals of the calibration runs; each run fits its
    // own slope, as the data does.
    double sum = 0, sum_sq = 0;
    for (std::size_t r = 0; r < options.qv_calibration_runs; ++r) {
      const auto bm = process::sample_paths(law, grid, n_cal, Vector::Zero(1),
                                            derive_key(key, "run", r));
      bool ignored = true;
      const auto cal_qv = realized_qv(bm, 0, ignored);
      const double cal_s2 = slope(cal_qv, n_cal, times, grid.horizon());
      for (double v : path_residuals(cal_qv, grid, n_cal, cal_s2)) {
        sum += v;
        sum_sq += v * v;
      }
    }
    const double pooled = static_cast<double>(options.qv_calibration_runs * n_cal);
    const double mean_cal = sum / pooled;
    const double sd_cal = std::sqrt(std::max(0.0, (sum_sq - pooled * mean_cal * mean_cal) /
                                                      (pooled - 1.0)));
    // One-sided z-test of the data mean against the calibration mean, with
    // the level split over coordinates.
    const double thr =
        mean_cal + z * sd_cal * std::sqrt(1.0 / static_cast<double>(n) + 1.0 / pooled);

    out.sigma2.push_back(s2);
    out.curve.push_back(std::move(curve));
    out.residual.push_back(res);
    out.threshold.push_back(thr);
    const double ratio = thr > 0 ? res / thr : (res > 0 ? INFINITY : 0.0);
    if (ratio > worst_ratio) worst_ratio = ratio, worst = c;
  }

  nlohmann::ordered_json details;
  details["sigma2"] = out.sigma2;
  details["residual"] = out.residual;
  details["threshold"] = out.threshold;
  details["coordinate"] = worst;
  details["monotone"] = out.monotone;
  details["calibration_runs"] = options.qv_calibration_runs;
  details["calibration_paths"] = n_cal;
  details["z"] = z;
  const double res = out.monotone ? out.residual[worst] : INFINITY;
  out.report = residual_report("qv_linearity", "qv_linearity", out.sigma2[worst], res,
                               out.threshold[worst], std::move(details));
  return out;
}

}  // namespace bmcheck::conformance
