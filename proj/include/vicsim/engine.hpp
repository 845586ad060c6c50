#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vicsim/controllers.hpp"
#include "vicsim/plant.hpp"

namespace vicsim {

enum class ControllerType { none, conventional, vic_i, proposed };

std::string to_string(ControllerType t);
std::optional<ControllerType> controller_type_from_string(const std::string& s);

struct ControllerSpec {
  ControllerType type = ControllerType::none;
  ConventionalVicParams conv;
  ShapingF f;
  ShapingG g;  // t_event is overwritten from the event section at run time
  std::vector<double> q_diag;  // LQR weights; empty -> diag(7,1) for N=1, identity otherwise
  double alpha = 1.0;
  std::vector<double> explicit_gains;  // if nonempty, used instead of synthesis
};

struct EventSpec {
  double time = 20.0;       // s; must be an integer multiple of dt
  double delta_P_L = 0.2;   // pu grid base; 0 disables the event
};

struct SimSettings {
  double t_end = 120.0;  // s; must be an integer multiple of dt
  double dt = 1e-3;      // s
  int record_stride = 10;
};

struct OutputSelection {
  bool plots = true;
};

struct WtgSpec {
  WtgParams params;
  double v_w = 10.2;
  double beta = 0.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  PowerBase power_base;
  AngularBase angular_base;
  GridParams grid;
  std::vector<WtgSpec> wtgs;
  ControllerSpec controller;
  EventSpec event;
  SimSettings sim;
  OutputSelection output;
};

// Cross-field validation; throws ConfigError. Returns the plant with
// per-turbine operating points resolved.
PlantConfig resolve_plant(const ScenarioConfig& cfg);
void validate(const ScenarioConfig& cfg);

struct TimeSeries {
  double event_time = 0.0;
  double f_nominal_hz = 60.0;

  std::vector<double> t;
  std::vector<double> delta_omega;  // pu
  std::vector<double> f_hz;
  std::vector<double> delta_P_g;    // pu grid base

  struct WtgTrack {
    double omega_g0 = 1.0;
    double P_e0 = 0.0;
    std::vector<double> omega_t, omega_g, theta_sh;  // pu, pu, rad
    std::vector<double> P_e;    // pu WTG base
    std::vector<double> dP_e;   // MPP deviation + virtual order, pu WTG base
    std::vector<double> P_vir;  // applied virtual order, pu WTG base
  };
  std::vector<WtgTrack> wtgs;

  // Controller internals kept for analysis; not part of the CSV contract.
  std::vector<double> g_val;
  std::vector<double> u_grid;          // pu grid base
  std::vector<double> u_prime_grid;    // pu grid base
  std::vector<double> p_vir_conv;      // raw droop+derivative value, pu grid base
  std::vector<double> p_vir_total_grid;  // shaped total order, pu grid base

  size_t size() const { return t.size(); }
};

// Classical fixed-step 4th order Runge-Kutta. S needs axpy_state(s, h, d)
// returning s + h*d; F is (const S&, double t) -> S.
double axpy_state(double s, double h, double d);
SystemState axpy_state(const SystemState& s, double h, const SystemDeriv& d);

template <class S, class F>
S rk4_step(const S& x, double t, double dt, F&& deriv) {
  const S k1 = deriv(x, t);
  const S k2 = deriv(axpy_state(x, dt / 2, k1), t + dt / 2);
  const S k3 = deriv(axpy_state(x, dt / 2, k2), t + dt / 2);
  const S k4 = deriv(axpy_state(x, dt, k3), t + dt);
  S acc = axpy_state(k1, 2.0, k2);   // k1 + 2 k2
  acc = axpy_state(acc, 2.0, k3);    // + 2 k3
  acc = axpy_state(acc, 1.0, k4);    // + k4
  return axpy_state(x, dt / 6.0, acc);
}

// Synthesizes or validates controller gains as the scenario requires.
// Throws SynthesisError with the failing check named.
OhftGains resolve_gains(const ScenarioConfig& cfg);

// Runs the scenario to completion. Deterministic: identical configs produce
// identical samples. Throws ConfigError / SynthesisError / SimulationFault.
TimeSeries run_scenario(const ScenarioConfig& cfg);

}  // namespace vicsim
