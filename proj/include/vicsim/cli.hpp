#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vicsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSynthesis = 3;
inline constexpr int kExitSimFault = 4;

struct RunOptions {
  std::string scenario_path;
  std::string out_dir = "out";
  std::optional<double> dt;
  std::optional<std::string> controller;  // overrides the scenario file
  bool plots = true;
  bool seedless = false;  // accepted for interface stability; model is deterministic
};

struct SweepOptions {
  std::string scenario_path;
  std::string out_dir = "sweep";
  std::vector<double> wind_speeds;
  std::optional<double> dt;
  std::optional<std::string> controller;
  bool plots = true;
  bool seedless = false;
};

struct GainsOptions {
  int n = 2;
  std::vector<double> q_diag;       // empty -> diag(7,1) for n=2, identity otherwise
  double alpha = 1.0;
  std::vector<double> check_gains;  // nonempty -> stability check mode
};

int cmd_run(const RunOptions& opt);
int cmd_sweep(const SweepOptions& opt);
int cmd_gains(const GainsOptions& opt);

}  // namespace vicsim
