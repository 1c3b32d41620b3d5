#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bmcheck/cli/emit.hpp"
#include "bmcheck/cli/run.hpp"
#include "bmcheck/cli/scenario.hpp"
#include "bmcheck/common/parallel.hpp"
#include "bmcheck/common/rng.hpp"
#include "bmcheck/process/ensemble_io.hpp"
#include "bmcheck/process/simulate.hpp"
#include "bmcheck/transforms/parse.hpp"

namespace {

using namespace bmcheck;

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<double> alpha;
  std::optional<std::size_t> threads;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

void add_common(CLI::App* app, Common& c, bool report = true) {
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("--paths", c.paths, "Number of simulated paths");
  app->add_option("--threads", c.threads, "Worker threads (overrides BMCHECK_THREADS)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output file (default stdout)");
  if (!report) return;
  app->add_option("--alpha", c.alpha, "Significance level");
  app->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "summary"}));
  app->add_flag("--timing", c.timing, "Record wall-clock duration and throughput");
}

void apply(const Common& c, cli::ScenarioConfig& config) {
  if (c.seed) config.seed = *c.seed;
  if (c.paths) config.paths = *c.paths;
  if (c.alpha) config.alpha = *c.alpha;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
}

int run_report(cli::ScenarioConfig config, const Common& c) {
  apply(c, config);
  const auto report = cli::run_scenario(config, {c.timing});
  std::string out_path = c.out;
  if (out_path.empty() && config.output) out_path = *config.output;
  write_output(out_path, cli::emit_report(report, c.format));
  if (!out_path.empty()) std::cerr << "overall: " << report.verdict << '\n';
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brownian-motion conformance and PDE diagnostics"};
  app.set_version_flag("--version", cli::toolkit_version());
  app.require_subcommand(1);

  Common common;

  auto* simulate = app.add_subcommand("simulate", "Simulate (transformed) paths to a file");
  std::string sim_config, layout = "binary", sim_transform;
  std::optional<std::size_t> sim_dim, sim_steps;
  std::optional<double> sim_horizon;
  simulate->add_option("--config", sim_config, "Scenario config providing law, grid and transform");
  simulate->add_option("--dimension", sim_dim, "Dimension of a standard Brownian motion");
  simulate->add_option("--steps", sim_steps, "Grid steps");
  simulate->add_option("--horizon", sim_horizon, "Time horizon");
  simulate->add_option("--transform", sim_transform, "Transform identifier");
  simulate->add_option("--layout", layout, "File layout")->check(CLI::IsMember({"binary", "csv"}));
  add_common(simulate, common, false);

  auto* conform = app.add_subcommand("conform", "Run the conformance suite on f(B)");
  std::string conform_config;
  std::string conform_transform = "identity";
  conform->add_option("--config", conform_config, "Scenario config (its tests are ignored)");
  conform->add_option("--transform", conform_transform, "Transform identifier");
  add_common(conform, common);

  auto* pde = app.add_subcommand("pde", "Run the PDE diagnostics");
  std::string pde_config;
  pde->add_option("--config", pde_config, "Scenario config with PDE tests");
  add_common(pde, common);

  auto* counter = app.add_subcommand("counterexample", "Run the builtin counterexample scenario");
  add_common(counter, common);

  auto* run = app.add_subcommand("run", "Run a full scenario");
  std::string run_config, builtin;
  auto* config_opt = run->add_option("--config", run_config, "Scenario config file");
  run->add_option("--builtin", builtin, "Builtin scenario")
      ->check(CLI::IsMember(cli::builtin_names()))
      ->excludes(config_opt);
  add_common(run, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.threads) set_thread_count(*common.threads);

    if (*simulate) {
      cli::ScenarioConfig config;
      if (!sim_config.empty()) config = cli::load_config(sim_config);
      if (sim_dim) {
        config.dimension = *sim_dim;
        config.drift = Vector::Zero(static_cast<Eigen::Index>(*sim_dim));
        config.covariance = Matrix::Identity(static_cast<Eigen::Index>(*sim_dim),
                                             static_cast<Eigen::Index>(*sim_dim));
        config.origin = Vector::Zero(static_cast<Eigen::Index>(*sim_dim));
      } else if (sim_config.empty()) {
        config.drift = Vector::Zero(2);
        config.covariance = Matrix::Identity(2, 2);
        config.origin = Vector::Zero(2);
      }
      if (sim_steps) config.steps = *sim_steps;
      if (sim_horizon) config.horizon = *sim_horizon;
      if (!sim_transform.empty()) config.transform = sim_transform;
      apply(common, config);
      if (common.out.empty()) throw ConfigInvalid({"--out: required for simulate"});
      config.tests = {};
      cli::validate(config);
      std::optional<transforms::Transform> parsed;
      try {
        parsed = transforms::parse_transform(config.transform, config.dimension);
      } catch (const Error& e) {
        throw ConfigInvalid({"transform: " + std::string(e.what())});
      }
      const process::GaussianLaw law(config.drift, config.covariance, false);
      const auto grid = config.times.empty()
                            ? process::TimeGrid::uniform(config.horizon, config.steps)
                            : process::TimeGrid(config.times);
      auto paths = process::sample_paths(law, grid, config.paths, config.origin,
                                         derive_key(config.seed, "simulate"));
      const auto out = process::apply_transform(std::move(paths), *parsed);
      std::ofstream file(common.out, std::ios::binary);
      if (!file) throw Error("cannot open " + common.out + " for writing");
      if (layout == "csv")
        process::write_csv(out, file);
      else
        process::write_binary(out, file);
      return 0;
    }

    if (*conform) {
      auto config = conform_config.empty() ? cli::builtin_scenario("affine-sanity")
                                            : cli::load_config(conform_config);
      if (conform_config.empty()) {
        config.name = "conform";
        config.transform = conform_transform;
      } else if (conform->count("--transform")) {
        config.transform = conform_transform;
      }
      cli::TestSpec t;
      t.type = "conformance";
      t.times = {0.5, 1.0, 2.0};
      t.windows = {{{0, 1}, {1, 2}}};
      config.tests = {t};
      return run_report(config, common);
    }
    if (*pde) {
      auto config = pde_config.empty() ? cli::builtin_scenario("pde-diagnostics")
                                       : cli::load_config(pde_config);
      std::erase_if(config.tests, [](const cli::TestSpec& t) { return cli::needs_paths(t); });
      return run_report(config, common);
    }
    if (*counter) return run_report(cli::builtin_scenario("counterexample"), common);
    if (*run) {
      if (run_config.empty() && builtin.empty())
        throw ConfigInvalid({"run: give --config or --builtin"});
      return run_report(run_config.empty() ? cli::builtin_scenario(builtin)
                                           : cli::load_config(run_config),
                        common);
    }
  } catch (const ConfigInvalid& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
