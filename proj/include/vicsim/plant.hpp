#pragma once

#include <vector>

#include "vicsim/units.hpp"

namespace vicsim {

// Two-mass wind turbine parameters, per-unit on the WTG base unless noted.
struct WtgParams {
  double H_t = 4.32;    // turbine inertia constant, s
  double H_g = 0.685;   // generator inertia constant, s
  double K_sh = 1.1;    // shaft stiffness, pu torque / rad
  double D_sh = 1.5;    // shaft damping, pu torque / pu speed
  double omega_B = 377.0 / 3.0;  // turbine-side electrical speed base, rad/s
  double a_P = 31.4;    // electric power loop bandwidth, rad/s
  double k_opt = 0.4425;         // MPP curve coefficient, pu
  double omega_g_min = 0.71;     // MPP tracking cutoff speed, pu
  double omega_g_max = 1.2;      // equilibrium solver clamp, pu
  double v_w1 = 10.2;   // wind speed at which omega_g = 1 pu is optimal, m/s
  double lambda_opt = 8.1001172383190161;   // argmax of cp(., 0)
  double cp_max = 0.48001190282787476;      // cp(lambda_opt, 0)

  double H_tg() const { return H_t + H_g; }
};

// Equivalent-grid (swing + governor) parameters, per-unit on the grid base.
struct GridParams {
  double M = 4.584;       // inertia constant, s
  double D = 1.0;         // load damping, pu
  double T_g = 1.2;       // governor time constant, s
  double R_droop = 0.03;  // droop, pu
  double delta_P_L = 0.2; // load step magnitude applied at the event, pu
};

struct WtgState {
  double omega_t = 1.0;   // turbine speed, pu
  double omega_g = 1.0;   // generator speed, pu
  double theta_sh = 0.0;  // shaft twist, rad
  double P_e = 0.0;       // electric power, pu WTG base
};

struct GridState {
  double delta_P_g = 0.0;    // governor power deviation, pu grid base
  double delta_omega = 0.0;  // frequency deviation, pu
};

struct SystemState {
  std::vector<WtgState> wtgs;
  GridState grid;
};

// Same layout as the state; doubles as the derivative container for RK4.
using SystemDeriv = SystemState;

struct WtgDeriv {
  double domega_t = 0.0;
  double domega_g = 0.0;
  double dtheta_sh = 0.0;
};

struct GridDeriv {
  double ddelta_P_g = 0.0;
  double ddelta_omega = 0.0;
};

struct MppEquilibrium {
  double omega_g0 = 1.0;  // pu
  double P_e0 = 0.0;      // pu WTG base
};

// One turbine plus its operating point; fixed over a run.
struct WtgUnit {
  WtgParams params;
  double v_w = 10.2;      // m/s
  double beta = 0.0;      // pitch, deg
  double omega_g0 = 1.0;
  double P_e0 = 0.0;
};

// Full plant: turbines, grid, and the power base tying them together.
struct PlantConfig {
  std::vector<WtgUnit> wtgs;
  GridParams grid;
  PowerBase base;
};

// Performance coefficient. Clamped below at 0; throws std::domain_error when
// an intermediate denominator vanishes.
double cp(double lambda, double beta);

// Mechanical power, pu WTG base, calibrated so that v_w = p.v_w1 and
// omega_t = 1 at beta = 0 yields exactly k_opt.
double mechanical_power(double v_w, double omega_t, double beta, const WtgParams& p);

// MPP power order: k_opt * omega_g^3 at or above the cutoff speed, else 0.
double mpp_reference(double omega_g, const WtgParams& p);

// Pre-event operating point for a given wind speed at beta = 0.
MppEquilibrium mpp_equilibrium(double v_w, const WtgParams& p);

// Two-mass shaft dynamics. Torques are T_m = P_m/omega_t and T_e = P_e/omega_g,
// formed by the caller. Throws SimulationFault via system_deriv when speeds
// are nonpositive.
WtgDeriv drive_train_deriv(const WtgState& s, double T_m, double T_e, const WtgParams& p);

// First-order electric power tracking loop.
double power_loop_deriv(double P_e, double P_ref, double a_P);

// Governor + swing dynamics driven by the total grid-base power imbalance.
GridDeriv grid_deriv(const GridState& g, double delta_P_tot, const GridParams& p);

// Total power deviation seen by the swing equation, pu grid base.
double delta_p_tot(const PlantConfig& cfg, const SystemState& s, double delta_P_L);

// Full coupled right-hand side. p_vir is the per-WTG virtual inertia power
// order, pu WTG base, held fixed by the caller.
SystemDeriv system_deriv(const PlantConfig& cfg, const SystemState& s,
                         double delta_P_L, const std::vector<double>& p_vir);

// Equilibrium state for the configured wind speeds (shaft preloaded, grid flat).
SystemState equilibrium_state(const PlantConfig& cfg);

void validate(const WtgParams& p);
void validate(const GridParams& p);

}  // namespace vicsim
