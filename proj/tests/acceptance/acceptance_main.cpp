// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bmcheck/cli/emit.hpp"
#include "bmcheck/cli/run.hpp"
#include "bmcheck/cli/scenario.hpp"
#include "bmcheck/common/format.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/conformance/conditional_mean.hpp"
#include "bmcheck/conformance/qv.hpp"
#include "bmcheck/pde/grid_domain.hpp"
#include "bmcheck/pde/monte_carlo.hpp"
#include "bmcheck/pde/residuals.hpp"
#include "bmcheck/process/simulate.hpp"
#include "bmcheck/transforms/catalog.hpp"
#include "bmcheck/transforms/differentiation.hpp"

using namespace bmcheck;
namespace tf = bmcheck::transforms;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Builtin runs shared by criteria 1, 3 and 12: JSON at 1 and 4 threads.
struct BuiltinRun {
  cli::RunReport report;
  std::string json_1, json_4;
};

std::map<std::string, BuiltinRun>& builtin_runs() {
  static std::map<std::string, BuiltinRun> runs;
  return runs;
}

const BuiltinRun& builtin(const std::string& name) {
  auto& runs = builtin_runs();
  if (auto it = runs.find(name); it != runs.end()) return it->second;
  const auto config = cli::builtin_scenario(name);
  BuiltinRun run;
  set_thread_count(1);
  run.report = cli::run_scenario(config);
  run.json_1 = cli::emit_report(run.report, "json");
  set_thread_count(4);
  run.json_4 = cli::emit_report(cli::run_scenario(config), "json");
  set_thread_count(1);
  return runs.emplace(name, std::move(run)).first->second;
}

const cli::ReportEntry* find_kind(const cli::RunReport& r, const std::string& kind) {
  for (const auto& e : r.reports)
    if (e.report.kind == kind) return &e;
  return nullptr;
}

Outcome affine_closure() {
  const auto& run = builtin("affine-sanity");
  const auto* suite = find_kind(run.report, "suite");
  if (!suite) return {false, "no suite entry"};
  std::string failing;
  for (const auto& e : run.report.reports)
    if (e.role == cli::Role::component && e.report.verdict == Verdict::reject)
      failing += " " + e.report.name;
  return {suite->report.verdict == Verdict::pass,
          "suite " + std::string(to_string(suite->report.verdict)) +
              (failing.empty() ? "" : ", failing:" + failing)};
}

Outcome counterexample_marginals() {
  auto config = cli::parse_config_text(R"cfg({
    "schema_version": 1, "name": "marginals", "grid": {"times": [0, 0.5, 1, 2]},
    "paths": 100000, "transform": "radial_lift(angle_multiply(2))",
    "tests": [{"type": "marginal_two_sample", "times": [0.5, 1, 2]}]})cfg");
  int good = 0;
  std::string ps;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    config.seed = seed;
    const auto r = cli::run_scenario(config);
    bool all = true;
    for (const auto& e : r.reports) {
      all = all && e.report.verdict == Verdict::pass;
      ps += " " + num(*e.report.p_value);
    }
    good += all ? 1 : 0;
  }
  return {good >= 9, std::to_string(good) + "/10 seeds pass at every t; p:" + ps};
}

Outcome counterexample_process() {
  const auto& run = builtin("counterexample");
  const auto* suite = find_kind(run.report, "suite");
  if (!suite) return {false, "no suite entry"};
  const std::set<std::string> pinned{"stationarity", "independence", "conditional_mean",
                                     "qv_linearity"};
  std::set<std::string> rejecting;
  for (const auto& e : run.report.reports)
    if (e.role == cli::Role::component && e.report.verdict == Verdict::reject)
      rejecting.insert(e.report.kind);
  bool marginals = true;
  for (const auto& e : run.report.reports)
    if (e.report.kind == "energy_two_sample") marginals = marginals && e.report.verdict == Verdict::pass;
  std::string names;
  for (const auto& k : rejecting) names += " " + k;
  return {suite->report.verdict == Verdict::reject && rejecting == pinned && marginals &&
              run.report.exit_code() == 0,
          "rejecting:" + names + "; Holm rejections " +
              std::to_string(run.report.corrected_rejections)};
}

Outcome qv_identity() {
  const auto grid = process::TimeGrid::uniform(1.0, 10000);
  const auto bm = process::sample_paths(process::GaussianLaw::standard(1), grid, 1000,
                                        Vector::Zero(1), derive_key(4, "qv"));
  conformance::TestOptions opts;
  opts.seed = 4;
  const double id = conformance::qv_linearity(bm, opts).sigma2[0];
  Matrix two(1, 1);
  two << 2.0;
  const auto doubled = process::apply_transform(bm, tf::affine(two, Vector::Zero(1)));
  const double dbl = conformance::qv_linearity(doubled, opts).sigma2[0];
  return {dbl >= 3.92 && dbl <= 4.08 && id >= 0.98 && id <= 1.02,
          "2x: " + num(dbl) + ", identity: " + num(id)};
}

Outcome drift_representation() {
  Matrix one(1, 1);
  one << 1.0;
  const process::GaussianLaw law(vec({1.0}), one);
  const auto e = process::sample_paths(law, process::TimeGrid({0, 1, 2}), 100000,
                                       Vector::Zero(1), derive_key(5, "drift"));
  conformance::TestOptions opts;
  opts.seed = 5;
  const auto [drift, report] = conformance::conditional_mean_test(e, e, 1.0, 2.0, opts);
  const double mu = drift.mu[0], se = drift.std_error[0];
  return {std::abs(mu - 1.0) <= 3 * se,
          "mu " + num(mu) + " +- " + num(se) + ", test " + std::string(to_string(report.verdict))};
}

Outcome smoothing() {
  const auto f = tf::coordinate_square(1, 0);
  const auto law = process::GaussianLaw::standard(1);
  const auto with = pde::smoothing_representation_check(f, law, 1.0, vec({0}), 1.0, 1000000, 6);
  const auto without = pde::smoothing_representation_check(f, law, 1.0, vec({0}), 0.0, 1000000, 6);
  const bool ok = std::abs(*with.signed_residual) <= 3 * *with.standard_error &&
                  std::abs(*without.signed_residual - 1.0) <= 3 * *without.standard_error;
  return {ok, "mu=1: " + num(*with.signed_residual) + " (se " + num(*with.standard_error) +
                  "), mu=0: " + num(*without.signed_residual)};
}

Outcome jensen() {
  const auto law = process::GaussianLaw::standard(2);
  bool ok = true;
  std::string detail;
  for (const auto& u : {tf::affine_scalar(vec({0.6, 0.8}), 2), tf::affine_scalar(vec({3, -4}), 0)}) {
    const auto r = pde::jensen_gap(u, law, 1.0, vec({0, 0}), 1000000, 7);
    ok = ok && std::abs(r.gap) <= 3 * r.gap_standard_error;
    detail += "affine gap " + num(r.gap) + "; ";
  }
  const auto s = pde::jensen_gap(tf::harmonic_power(2, tf::HarmonicPart::real), law, 1.0,
                                 vec({0, 0}), 1000000, 7);
  const double oracle = 2.0 * std::sqrt(std::numbers::pi / 2.0);
  ok = ok && std::abs(s.gap - oracle) <= 3 * s.gap_standard_error;
  return {ok, detail + "saddle gap " + num(s.gap) + " vs " + num(oracle) + " (se " +
                  num(s.gap_standard_error) + ")"};
}

Outcome eikonal_grid() {
  const std::vector<tf::Transform> catalog{
      tf::affine_scalar(vec({0.6, 0.8}), 2),
      tf::affine_scalar(vec({3, 4}), -1),
      tf::harmonic_power(1, tf::HarmonicPart::real),
      tf::harmonic_power(1, tf::HarmonicPart::imaginary),
      tf::harmonic_power(2, tf::HarmonicPart::real),
      tf::harmonic_power(2, tf::HarmonicPart::imaginary),
      tf::harmonic_power(3, tf::HarmonicPart::real),
      tf::harmonic_power(3, tf::HarmonicPart::imaginary),
      tf::coordinate_square(2, 0),
      tf::cubic_perturbation(2, 1e-3),
      tf::constant(2, 1.0),
      tf::gaussian_bump(2),
      tf::component(tf::radial_lift(tf::SphereMap::angle_multiply(2)), 0),
      tf::component(tf::radial_lift(tf::SphereMap::angle_multiply(2)), 1),
      tf::component(tf::radial_lift(tf::SphereMap::planar_rotation(0.3)), 0),
      tf::component(tf::radial_lift(tf::SphereMap::planar_rotation(0.3)), 1),
  };
  const auto domain = pde::GridDomain::box(vec({-1, -1}), vec({1, 1}), 0.05);
  if (!domain.connected()) return {false, "grid not connected"};
  int certified = 0;
  bool ok = true;
  for (const auto& u : catalog) {
    const auto lap = pde::laplacian_residual(u, domain, 1e-6);
    const double target = tf::gradient(u, vec({-1, -1})).norm();
    const auto eik = pde::eikonal_residual(u, domain, target, 1e-6);
    if (lap.verdict == Verdict::pass && eik.verdict == Verdict::pass) {
      ++certified;
      ok = ok && pde::gradient_constancy(u, domain, 1e-4).second.verdict == Verdict::pass;
    }
  }
  const auto saddle = tf::harmonic_power(2, tf::HarmonicPart::real);
  const double lap = pde::laplacian_residual(saddle, domain).max_abs;
  const double eik = pde::eikonal_residual(saddle, domain, 1.0).max_abs;
  ok = ok && lap <= 1e-8 && eik >= 1.0;
  return {ok, std::to_string(certified) + " of " + std::to_string(catalog.size()) +
                  " fields certified; saddle laplacian " + num(lap) + ", eikonal " + num(eik)};
}

Outcome mean_value() {
  const auto saddle = tf::harmonic_power(2, tf::HarmonicPart::real);
  const auto h = pde::mean_value_check(saddle, vec({0.3, 0.4}), 0.5, 1000000, 9);
  const auto q = pde::mean_value_check(tf::coordinate_square(2, 0), vec({0, 0}), 1.0, 1000000, 9);
  const double ux = saddle.scalar(vec({0.3, 0.4}));
  const bool ok = std::abs(ux + 0.07) <= 1e-12 &&
                  std::abs(*h.signed_residual) <= 3 * *h.standard_error &&
                  std::abs(*q.signed_residual - 0.25) <= 3 * *q.standard_error;
  return {ok, "saddle defect " + num(*h.signed_residual) + " (se " + num(*h.standard_error) +
                  "), x1^2 defect " + num(*q.signed_residual)};
}

Outcome ball_volume() {
  const double pi = std::numbers::pi;
  bool ok = std::abs(pde::ball_volume(1) - 2) <= 2e-12 &&
            std::abs(pde::ball_volume(2) - pi) <= pi * 1e-12 &&
            std::abs(pde::ball_volume(3) - 4 * pi / 3) <= 4 * pi / 3 * 1e-12;
  std::string detail;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = pde::ball_volume_check(n, 1000000, 10);
    ok = ok && r.verdict == Verdict::pass;
    const auto note = r.details.value("note", std::string());
    if (n != 2) ok = ok && note.find("Gamma(n/2)") != std::string::npos;
    detail += " n=" + std::to_string(n) + ":" + num(*r.signed_residual);
  }
  return {ok, "MC - exact:" + detail};
}

Outcome null_calibration() {
  auto config = cli::parse_config_text(R"cfg({
    "schema_version": 1, "name": "null", "grid": {"horizon": 2, "steps": 100},
    "paths": 1000,
    "tests": [{"type": "gaussian_marginal"}, {"type": "marginal_two_sample"},
              {"type": "stationarity"}, {"type": "independence"}, {"type": "qv"},
              {"type": "conditional_mean"}, {"type": "conformance"}]})cfg");
  const int runs = 50;
  std::map<std::string, int> rejections;
  for (int m = 0; m < runs; ++m) {
    config.seed = derive_key(11, "meta", static_cast<std::uint64_t>(m));
    for (const auto& e : cli::run_scenario(config).reports) {
      if (e.role != cli::Role::verdict) continue;
      rejections[e.report.name] += e.report.verdict == Verdict::reject ? 1 : 0;
    }
  }
  bool ok = !rejections.empty();
  double worst = 0;
  std::string worst_name;
  for (const auto& [name, count] : rejections) {
    const double rate = static_cast<double>(count) / runs;
    ok = ok && rate <= 0.06;
    if (rate >= worst) worst = rate, worst_name = name;
  }
  return {ok, std::to_string(rejections.size()) + " tests, max rate " + num(worst) + " (" +
                  worst_name + ")"};
}

Outcome determinism() {
  bool ok = true;
  std::string detail;
  for (const auto& name : cli::builtin_names()) {
    const auto& run = builtin(name);
    const bool same = run.json_1 == run.json_4;
    ok = ok && same;
    detail += name + (same ? " identical; " : " differs; ");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"affine closure", affine_closure},
      {"counterexample marginals", counterexample_marginals},
      {"counterexample process failure", counterexample_process},
      {"quadratic variation", qv_identity},
      {"drift representation", drift_representation},
      {"smoothing representation", smoothing},
      {"Jensen gap", jensen},
      {"eikonal on a grid", eikonal_grid},
      {"mean-value property", mean_value},
      {"ball volume", ball_volume},
      {"null calibration", null_calibration},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
