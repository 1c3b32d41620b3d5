#include "bmcheck/cli/run.hpp"

#include <chrono>
#include <cmath>

#include "bmcheck/common/format.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/conformance/conditional_mean.hpp"
#include "bmcheck/conformance/increments.hpp"
#include "bmcheck/conformance/marginal.hpp"
#include "bmcheck/conformance/qv.hpp"
#include "bmcheck/conformance/suite.hpp"
#include "bmcheck/pde/grid_domain.hpp"
#include "bmcheck/pde/monte_carlo.hpp"
#include "bmcheck/pde/residuals.hpp"
#include "bmcheck/process/simulate.hpp"
#include "bmcheck/transforms/parse.hpp"

namespace bmcheck::cli {
namespace {

using conformance::TestReport;
using nlohmann::ordered_json;

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

conformance::TestOptions test_options(const ScenarioConfig& c, std::uint64_t seed) {
  conformance::TestOptions o;
  o.alpha = c.alpha;
  o.bootstrap = c.bootstrap;
  o.permutations = c.permutations;
  o.seed = seed;
  return o;
}

TestReport from_residual(const pde::ResidualReport& r, const std::string& kind) {
  TestReport t;
  t.name = r.name;
  t.kind = kind;
  if (r.signed_residual) {
    t.statistic = *r.signed_residual;
    t.residual = std::abs(*r.signed_residual);
  } else {
    t.statistic = r.max_abs;
    t.residual = r.max_abs;
  }
  t.threshold = r.tolerance;
  t.verdict = r.verdict;
  t.details = pde::to_json(r);
  t.details.erase("name");
  return t;
}

TestReport from_jensen(const pde::JensenGapReport& r, const std::string& field) {
  TestReport t;
  t.name = "jensen(" + field + ")";
  t.kind = "jensen";
  t.statistic = r.gap;
  t.residual = r.gap;
  t.threshold = 3.0 * r.gap_standard_error;
  t.verdict = r.verdict;
  t.details = pde::to_json(r);
  return t;
}

pde::GridDomain make_domain(const DomainSpec& d) {
  if (d.mask == "box") return pde::GridDomain::box(d.lo, d.hi, d.spacing);
  if (d.mask == "ball") return pde::GridDomain::ball(d.center, d.radius, d.spacing);
  return pde::GridDomain::annulus(d.center, d.inner, d.outer, d.spacing);
}

/// Draws N samples of the process at time t directly from its Gaussian law.
SampleMatrix reference_marginal(const process::GaussianLaw& law, const Vector& origin,
                                double t, std::size_t n, std::uint64_t key) {
  const auto d = static_cast<Eigen::Index>(law.dimension());
  SampleMatrix out(static_cast<Eigen::Index>(n), d);
  const Vector mean = origin + t * law.drift();
  const Matrix scale = std::sqrt(t) * law.factor();
  parallel_for(n, [&](std::size_t i) {
    Substream rng(key, i);
    Vector z(d);
    for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
    out.row(static_cast<Eigen::Index>(i)) = (mean + scale * z).transpose();
  });
  return out;
}

std::string test_label(const TestSpec& t, std::size_t index) {
  return "tests[" + std::to_string(index) + "] (" + t.type + ")";
}

}  // namespace

StageError::StageError(std::string stage, const std::string& message)
    : Error(stage + ": " + message), stage_(std::move(stage)) {}

bool ReportEntry::as_expected() const {
  return (report.verdict == Verdict::reject) == expect_reject;
}

int RunReport::exit_code() const { return unexpected.empty() ? 0 : 1; }

std::string toolkit_version() { return BMCHECK_VERSION; }

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();

  RunReport run;
  run.config = config.to_json();
  run.seed = config.seed;
  run.version = toolkit_version();

  const bool want_paths = std::any_of(config.tests.begin(), config.tests.end(), needs_paths);
  const bool want_input = std::any_of(config.tests.begin(), config.tests.end(),
                                      [](const TestSpec& t) { return t.type == "conditional_mean"; });
  const process::GaussianLaw law(config.drift, config.covariance, false);

  std::optional<process::PathEnsemble> input, output;
  if (want_paths) {
    const auto grid = config.times.empty()
                          ? process::TimeGrid::uniform(config.horizon, config.steps)
                          : process::TimeGrid(config.times);
    auto paths = stage("simulate", [&] {
      return process::sample_paths(law, grid, config.paths, config.origin,
                                   derive_key(config.seed, "simulate"));
    });
    const auto f = stage("transform", [&] {
      return transforms::parse_transform(config.transform, config.dimension);
    });
    if (want_input) {
      output = stage("transform", [&] { return process::apply_transform(paths, f); });
      input = std::move(paths);
    } else {
      output = stage("transform", [&] { return process::apply_transform(std::move(paths), f); });
    }
  }

  auto add = [&](TestReport r, const TestSpec& t, Role role = Role::verdict) {
    run.reports.push_back({std::move(r), role, role == Role::verdict && t.expect_reject});
  };

  for (std::size_t i = 0; i < config.tests.size(); ++i) {
    const auto& t = config.tests[i];
    const std::uint64_t seed = derive_key(config.seed, "test", i);
    const auto opts = test_options(config, seed);
    stage(test_label(t, i), [&] {
      if (t.type == "conformance") {
        conformance::SuiteOptions so;
        so.test = opts;
        so.marginal_times = t.times;
        so.stationarity_delta = t.delta;
        so.stationarity_t1 = t.t1;
        so.stationarity_t2 = t.t2;
        so.independence_windows.clear();
        for (const auto& w : t.windows) so.independence_windows.push_back(w);
        so.conditional_s = t.s;
        so.conditional_t = t.t;
        const auto suite = conformance::conformance_suite(*output, so);
        for (auto r : suite.reports) {
          r.name = "conformance/" + r.name;
          add(std::move(r), t, Role::component);
        }
        auto qv = suite.qv.report;
        qv.name = "conformance/" + qv.name;
        add(std::move(qv), t, Role::component);
        add(suite.summary(), t);
        run.corrected_rejections += suite.corrected_rejections;
      } else if (t.type == "gaussian_marginal") {
        const auto null =
            conformance::gaussian_marginal_null(output->num_paths(), output->dimension(), opts);
        for (double time : t.times)
          add(conformance::gaussian_marginal_test(
                  output->marginal(output->grid().require_index(time)), time, null, opts),
              t);
      } else if (t.type == "marginal_two_sample") {
        for (std::size_t k = 0; k < t.times.size(); ++k) {
          const double time = t.times[k];
          const auto x = output->marginal(output->grid().require_index(time));
          const auto y = reference_marginal(law, config.origin, time, config.paths,
                                            derive_key(seed, "reference", k));
          auto o = opts;
          o.seed = derive_key(seed, "time", k);
          auto r = conformance::two_sample_test(x, y, o);
          r.name = "marginal_two_sample(t=" + format_number(time) + ")";
          r.details["reference"] = "independent draws of the untransformed process";
          add(std::move(r), t);
        }
      } else if (t.type == "stationarity") {
        add(conformance::stationarity_test(*output, t.delta, t.t1, t.t2, opts), t);
      } else if (t.type == "independence") {
        for (std::size_t k = 0; k < t.windows.size(); ++k) {
          auto o = opts;
          o.seed = derive_key(seed, "window", k);
          add(conformance::increment_independence_test(*output, t.windows[k].first,
                                                       t.windows[k].second, o),
              t);
        }
      } else if (t.type == "qv") {
        add(conformance::qv_linearity(*output, opts).report, t);
      } else if (t.type == "conditional_mean") {
        add(conformance::conditional_mean_test(*input, *output, t.s, t.t, opts).second, t);
      } else if (t.type == "laplacian" || t.type == "eikonal" ||
                 t.type == "gradient_constancy") {
        const auto domain = make_domain(*t.domain);
        const auto u = transforms::parse_transform(t.field, domain.dimension());
        if (t.type == "laplacian") {
          add(from_residual(pde::laplacian_residual(u, domain, t.tolerance), t.type), t);
        } else if (t.type == "eikonal") {
          add(from_residual(pde::eikonal_residual(u, domain, t.target, t.tolerance), t.type), t);
        } else {
          add(from_residual(pde::gradient_constancy(u, domain, t.tolerance).second, t.type), t);
        }
      } else if (t.type == "mean_value") {
        const auto u = transforms::parse_transform(t.field, static_cast<std::size_t>(t.x.size()));
        add(from_residual(pde::mean_value_check(u, t.x, t.r, t.samples, seed), t.type), t);
      } else if (t.type == "smoothing") {
        const auto f = transforms::parse_transform(t.field, config.dimension);
        add(from_residual(
                pde::smoothing_representation_check(f, law, t.tau, t.x, t.mu, t.samples, seed),
                t.type),
            t);
      } else if (t.type == "jensen") {
        const auto f = transforms::parse_transform(t.field, config.dimension);
        add(from_jensen(pde::jensen_gap(f, law, t.tau, t.x, t.samples, seed), f.name()), t);
      } else if (t.type == "ball_volume") {
        add(from_residual(pde::ball_volume_check(t.n, t.samples, seed), t.type), t);
      }
      return 0;
    });
  }

  for (const auto& e : run.reports) {
    if (e.role != Role::verdict) continue;
    if (!e.as_expected()) run.unexpected.push_back(e.report.name);
    if (e.report.kind != "suite" && e.report.verdict == Verdict::reject)
      ++run.corrected_rejections;
  }
  if (config.tests.empty())
    run.verdict = "vacuous-pass";
  else
    run.verdict = run.unexpected.empty() ? "pass" : "reject";

  if (options.timing) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    run.duration_ms = ms;
    run.throughput_paths_per_s =
        ms > 0 ? static_cast<double>(want_paths ? config.paths : 0) / (ms / 1000.0) : 0.0;
  }
  return run;
}

}  // namespace bmcheck::cli
