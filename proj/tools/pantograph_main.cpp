#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pantograph/app.hpp"

namespace {

void add_common(CLI::App* cmd, pantograph::app::CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario JSON document")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir,
                  std::string("Output directory (default: config output_dir, then $") +
                      pantograph::app::kOutDirEnv + ", then ./" +
                      pantograph::app::kDefaultOutDir + ")");
  cmd->add_option("--seed", opts.seed, "Override the config's rng_seed");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pantograph::app;

  CLI::App cli{"Constant-force pantograph probe: sweeps, contact simulation and design"};
  cli.require_subcommand(1);

  SweepOptions sweep;
  auto* sweep_cmd = cli.add_subcommand("sweep", "Force-height sweep to CSV and SVG");
  add_common(sweep_cmd, sweep);
  sweep_cmd->add_flag("--lossless", sweep.lossless, "Ideal spring, no friction or noise");
  const std::map<std::string, pantograph::Direction> directions{
      {"extending", pantograph::Direction::extending},
      {"compressing", pantograph::Direction::compressing}};
  sweep_cmd->add_option("--direction", sweep.direction, "extending | compressing")
      ->transform(CLI::CheckedTransformer(directions, CLI::ignore_case));
  sweep_cmd->add_flag("--ascii", sweep.ascii, "Also print an ASCII chart");

  SimulateOptions simulate;
  auto* sim_cmd = cli.add_subcommand("simulate", "Quasi-static contact simulation with dwell report");
  add_common(sim_cmd, simulate);
  sim_cmd->add_flag("--lossless", simulate.lossless, "Ideal spring, no friction or noise");
  sim_cmd->add_flag("--compare-spring-probe", simulate.compare_spring_probe,
                    "Also run the linear spring-loaded probe on the same scenario");

  DesignOptions design;
  auto* design_cmd = cli.add_subcommand("design", "Solve link and lever lengths for a target force");
  add_common(design_cmd, design);
  design_cmd->add_flag("--brute-force-check", design.brute_force_check,
                       "Cross-check against the serial exhaustive enumeration");

  auto* verify_cmd = cli.add_subcommand("verify", "Run the invariant suite");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*sweep_cmd) return run_sweep(sweep, std::cout, std::cerr);
  if (*sim_cmd) return run_simulate(simulate, std::cout, std::cerr);
  if (*design_cmd) return run_design(design, std::cout, std::cerr);
  if (*verify_cmd) return run_verify(std::cout, std::cerr);
  return kExitConfig;
}
