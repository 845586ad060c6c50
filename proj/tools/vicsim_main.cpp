#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vicsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wind turbine virtual inertia frequency support simulator"};
  app.require_subcommand(1);

  vicsim::RunOptions run_opt;
  bool run_no_plots = false;
  double run_dt = 0.0;
  std::string run_controller;
  CLI::App* run = app.add_subcommand("run", "simulate one scenario file");
  run->add_option("scenario", run_opt.scenario_path, "scenario JSON file")->required();
  run->add_option("--out", run_opt.out_dir, "output directory");
  CLI::Option* run_dt_opt = run->add_option("--dt", run_dt, "integration step override, s");
  CLI::Option* run_ctl_opt =
      run->add_option("--controller", run_controller,
                      "controller override: none, conventional, vic-i, proposed");
  run->add_flag("--no-plots", run_no_plots, "skip SVG plot generation");
  run->add_flag("--seedless", run_opt.seedless,
                "accepted for interface stability; the model is deterministic");

  vicsim::SweepOptions sweep_opt;
  bool sweep_no_plots = false;
  double sweep_dt = 0.0;
  std::string sweep_controller;
  CLI::App* sweep = app.add_subcommand("sweep", "run one scenario across wind speeds");
  sweep->add_option("scenario", sweep_opt.scenario_path, "scenario JSON file")->required();
  sweep->add_option("--out", sweep_opt.out_dir, "output directory");
  sweep->add_option("--wind", sweep_opt.wind_speeds, "wind speeds, m/s")
      ->required()
      ->delimiter(',');
  CLI::Option* sweep_dt_opt =
      sweep->add_option("--dt", sweep_dt, "integration step override, s");
  CLI::Option* sweep_ctl_opt =
      sweep->add_option("--controller", sweep_controller,
                        "controller override: none, conventional, vic-i, proposed");
  sweep->add_flag("--no-plots", sweep_no_plots, "skip SVG plot generation");
  sweep->add_flag("--seedless", sweep_opt.seedless,
                  "accepted for interface stability; the model is deterministic");

  vicsim::GainsOptions gains_opt;
  CLI::App* gains = app.add_subcommand("gains", "synthesize or check feedback gains");
  gains->add_option("--n", gains_opt.n, "chain order (turbine count plus one)");
  gains->add_option("--q", gains_opt.q_diag, "diagonal state weights")->delimiter(',');
  gains->add_option("--alpha", gains_opt.alpha, "control effort weight");
  gains->add_option("--check", gains_opt.check_gains,
                    "gain list to test for closed-loop stability")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? vicsim::kExitOk : vicsim::kExitConfig;
  }

  if (run->parsed()) {
    if (*run_dt_opt) run_opt.dt = run_dt;
    if (*run_ctl_opt) run_opt.controller = run_controller;
    run_opt.plots = !run_no_plots;
    return vicsim::cmd_run(run_opt);
  }
  if (sweep->parsed()) {
    if (*sweep_dt_opt) sweep_opt.dt = sweep_dt;
    if (*sweep_ctl_opt) sweep_opt.controller = sweep_controller;
    sweep_opt.plots = !sweep_no_plots;
    return vicsim::cmd_sweep(sweep_opt);
  }
  return vicsim::cmd_gains(gains_opt);
}
