#include "vicsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include "vicsim/analysis.hpp"
#include "vicsim/engine.hpp"
#include "vicsim/errors.hpp"
#include "vicsim/gains.hpp"
#include "vicsim/output.hpp"
#include "vicsim/scenario.hpp"

namespace vicsim {

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const SynthesisError*>(&e)) return kExitSynthesis;
  if (dynamic_cast<const SimulationFault*>(&e)) return kExitSimFault;
  return kExitSimFault;
}

void apply_overrides(ScenarioConfig& cfg, const std::optional<double>& dt,
                     const std::optional<std::string>& controller, bool plots) {
  if (dt) {
    if (!(*dt > 0.0)) throw ConfigError("--dt must be positive");
    cfg.sim.dt = *dt;
  }
  if (controller) {
    const auto t = controller_type_from_string(*controller);
    if (!t) {
      throw ConfigError("--controller must be one of none, conventional, vic-i, proposed");
    }
    cfg.controller.type = *t;
  }
  if (!plots) cfg.output.plots = false;
  validate(cfg);
}

std::string format_wind(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string opt_cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", *v);
  return buf;
}

}  // namespace

int cmd_run(const RunOptions& opt) {
  try {
    ScenarioConfig cfg = load_scenario_file(opt.scenario_path);
    apply_overrides(cfg, opt.dt, opt.controller, opt.plots);
    const TimeSeries ts = run_scenario(cfg);
    const RunMetrics metrics = compute_metrics(ts);
    const OutputBundle bundle = write_run_outputs(opt.out_dir, ts, metrics, cfg.output.plots);
    std::cout << "scenario: " << cfg.name << " (controller "
              << to_string(cfg.controller.type) << ")\n";
    std::cout << "nadir: " << metrics.nadir_hz << " Hz at " << metrics.nadir_time_s
              << " s\n";
    std::cout << "wrote " << bundle.csv_path << "\n";
    std::cout << "wrote " << bundle.metrics_path << "\n";
    for (const std::string& p : bundle.plot_paths) std::cout << "wrote " << p << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_sweep(const SweepOptions& opt) {
  try {
    if (opt.wind_speeds.empty()) {
      throw ConfigError("sweep requires at least one wind speed (--wind)");
    }
    const ScenarioConfig base = load_scenario_file(opt.scenario_path);

    struct SweepRun {
      double wind;
      std::string dir;
      RunMetrics metrics;
    };
    std::vector<std::future<SweepRun>> futures;
    for (double wind : opt.wind_speeds) {
      futures.push_back(std::async(std::launch::async, [&, wind]() {
        ScenarioConfig cfg = base;  // shared-nothing copy per run
        for (WtgSpec& w : cfg.wtgs) w.v_w = wind;
        apply_overrides(cfg, opt.dt, opt.controller, opt.plots);
        const TimeSeries ts = run_scenario(cfg);
        const RunMetrics metrics = compute_metrics(ts);
        const std::string dir = opt.out_dir + "/w" + format_wind(wind);
        write_run_outputs(dir, ts, metrics, cfg.output.plots);
        return SweepRun{wind, dir, metrics};
      }));
    }

    std::vector<SweepRun> done;
    int failure_code = kExitOk;
    for (size_t i = 0; i < futures.size(); ++i) {
      try {
        done.push_back(futures[i].get());
      } catch (const std::exception& e) {
        std::cerr << "error: wind " << format_wind(opt.wind_speeds[i]) << " m/s: "
                  << e.what() << "\n";
        if (failure_code == kExitOk) failure_code = exit_code_for(e);
      }
    }

    std::string csv =
        "wind_mps,nadir_hz,nadir_time_s,secondary_dip_time_s,secondary_dip_depth_hz,"
        "torsional_freq_hz,torsional_peak_to_peak_pu,recovery_time_s\n";
    for (const SweepRun& r : done) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%g,%.12g,%.12g", r.wind, r.metrics.nadir_hz,
                    r.metrics.nadir_time_s);
      csv += buf;
      csv += "," + opt_cell(r.metrics.secondary_dip_time_s);
      csv += "," + opt_cell(r.metrics.secondary_dip_depth_hz);
      csv += "," + opt_cell(r.metrics.torsional_freq_hz);
      char buf2[40];
      std::snprintf(buf2, sizeof(buf2), ",%.12g", r.metrics.torsional_peak_to_peak_pu);
      csv += buf2;
      csv += "," + opt_cell(r.metrics.recovery_time_s);
      csv += "\n";
    }
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    write_text_atomic(opt.out_dir + "/summary.csv", csv);
    for (const SweepRun& r : done) {
      std::cout << "wind " << format_wind(r.wind) << " m/s -> " << r.dir << "\n";
    }
    std::cout << "wrote " << opt.out_dir << "/summary.csv\n";
    return failure_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_gains(const GainsOptions& opt) {
  try {
    if (!opt.check_gains.empty()) {
      const HurwitzResult h = hurwitz_check(OhftGains{opt.check_gains});
      std::cout << (h.stable ? "stable" : "unstable") << "\n";
      for (const std::complex<double>& ev : h.eigenvalues) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%.6f%+.6fj\n", ev.real(), ev.imag());
        std::cout << buf;
      }
      return h.stable ? kExitOk : kExitSynthesis;
    }

    if (opt.n < 1) throw ConfigError("--n must be at least 1");
    if (!(opt.alpha > 0.0)) throw ConfigError("--alpha must be positive");
    if (!opt.q_diag.empty() && static_cast<int>(opt.q_diag.size()) != opt.n) {
      throw ConfigError("--q must list exactly n weights");
    }
    for (double q : opt.q_diag) {
      if (!(q > 0.0)) throw ConfigError("--q entries must be positive");
    }
    const BrunovskyChain chain = brunovsky_chain(opt.n);
    LqrWeights w;
    w.alpha = opt.alpha;
    w.Q = Eigen::MatrixXd::Identity(opt.n, opt.n);
    if (!opt.q_diag.empty()) {
      for (int i = 0; i < opt.n; ++i) w.Q(i, i) = opt.q_diag[i];
    } else if (opt.n == 2) {
      w.Q(0, 0) = 7.0;
      w.Q(1, 1) = 1.0;
    }
    const LqrResult res = lqr_gains(chain, w);
    std::string line;
    for (size_t i = 0; i < res.gains.k.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.6f", res.gains.k[i]);
      if (i) line += ' ';
      line += buf;
    }
    std::cout << line << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace vicsim
