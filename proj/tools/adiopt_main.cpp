#include <CLI11.hpp>

#include "adiopt/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"adiopt: adiabatic evolution simulation, stationarity certificates and "
               "fixed-endpoint path optimization"};
  app.require_subcommand(1);

  adiopt::CommandOptions options;
  std::string config;
  std::string out = ".";
  int steps = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "scenario config file (JSON)")->required();
    cmd->add_option("--out", out, "output directory (default: current directory)");
    cmd->add_option("--steps", steps, "override the config's integrator step count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "override the config's random seed");
    return cmd;
  };

  auto* simulate = add_common(app.add_subcommand(
      "simulate", "integrate the scenario and write t, A, E_level, min_gap, slowness_diag CSV"));
  auto* residual = add_common(app.add_subcommand(
      "residual", "evaluate the stationarity residual R_i(t) and write CSV plus a JSON summary"));
  auto* optimize = add_common(app.add_subcommand(
      "optimize", "gradient-ascend the final adiabaticity over fixed-endpoint isospectral paths"));
  auto* oracle = add_common(app.add_subcommand(
      "oracle-check", "verify the numerical pipeline against the exact rotating-spin solution"));

  CLI11_PARSE(app, argc, argv);

  options.config_path = config;
  options.out_dir = out;
  for (const auto* cmd : {simulate, residual, optimize, oracle}) {
    if (cmd->parsed()) {
      if (cmd->count("--steps") > 0) options.steps_override = steps;
      if (cmd->count("--seed") > 0) options.seed_override = seed;
    }
  }

  if (simulate->parsed()) return adiopt::cmd_simulate(options);
  if (residual->parsed()) return adiopt::cmd_residual(options);
  if (optimize->parsed()) return adiopt::cmd_optimize(options);
  if (oracle->parsed()) return adiopt::cmd_oracle_check(options);
  return 1;
}
