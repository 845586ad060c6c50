#include "vicsim/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

// Raw performance coefficient before the lower clamp.
double cp_raw(double lambda, double beta) {
  const double cube = beta * beta * beta + 1.0;
  if (std::abs(cube) < 1e-12) {
    throw std::domain_error("cp: beta^3 + 1 vanishes");
  }
  const double den = lambda + 0.08 * beta;
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("cp: lambda + 0.08*beta vanishes");
  }
  const double inv_li = 1.0 / den - 0.035 / cube;
  return 0.5176 * (116.0 * inv_li - 0.4 * beta - 5.0) * std::exp(-21.0 * inv_li) +
         0.0068 * lambda;
}

// Golden-section argmax of cp(., 0); the peak is the single interior maximum
// on [4, 12].
struct CpPeak {
  double lambda;
  double value;
};

CpPeak cp_peak() {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 4.0, b = 12.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = cp_raw(c, 0.0), fd = cp_raw(d, 0.0);
  for (int i = 0; i < 200 && (b - a) > 1e-12; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = cp_raw(c, 0.0);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = cp_raw(d, 0.0);
    }
  }
  const double lam = 0.5 * (a + b);
  return {lam, cp_raw(lam, 0.0)};
}

}  // namespace

double cp(double lambda, double beta) {
  return std::max(cp_raw(lambda, beta), 0.0);
}

double mechanical_power(double v_w, double omega_t, double beta, const WtgParams& p) {
  if (!(v_w > 0.0)) {
    throw std::domain_error("mechanical_power: wind speed must be positive");
  }
  const double r = v_w / p.v_w1;
  const double lambda = p.lambda_opt * omega_t / r;
  return (p.k_opt / p.cp_max) * cp(lambda, beta) * r * r * r;
}

double mpp_reference(double omega_g, const WtgParams& p) {
  if (omega_g < p.omega_g_min) return 0.0;
  return p.k_opt * omega_g * omega_g * omega_g;
}

MppEquilibrium mpp_equilibrium(double v_w, const WtgParams& p) {
  if (!(v_w > 0.0)) {
    throw std::domain_error("mpp_equilibrium: wind speed must be positive");
  }
  // The calibration makes v_w/v_w1 the exact root of
  // P_m(v_w, omega) = k_opt omega^3 before clamping.
  const double omega = std::clamp(v_w / p.v_w1, p.omega_g_min, p.omega_g_max);
  return {omega, mpp_reference(omega, p)};
}

WtgDeriv drive_train_deriv(const WtgState& s, double T_m, double T_e, const WtgParams& p) {
  const double shaft = p.K_sh * s.theta_sh + p.D_sh * (s.omega_t - s.omega_g);
  WtgDeriv d;
  d.domega_t = (T_m - shaft) / (2.0 * p.H_t);
  d.domega_g = (shaft - T_e) / (2.0 * p.H_g);
  d.dtheta_sh = p.omega_B * (s.omega_t - s.omega_g);
  return d;
}

double power_loop_deriv(double P_e, double P_ref, double a_P) {
  return a_P * (P_ref - P_e);
}

GridDeriv grid_deriv(const GridState& g, double delta_P_tot, const GridParams& p) {
  GridDeriv d;
  d.ddelta_P_g = -g.delta_omega / (p.R_droop * p.T_g) - g.delta_P_g / p.T_g;
  d.ddelta_omega = (delta_P_tot - p.D * g.delta_omega) / p.M;
  return d;
}

double delta_p_tot(const PlantConfig& cfg, const SystemState& s, double delta_P_L) {
  double tot = s.grid.delta_P_g - delta_P_L;
  for (size_t i = 0; i < cfg.wtgs.size(); ++i) {
    tot += wtg_to_grid_pu(s.wtgs[i].P_e - cfg.wtgs[i].P_e0, cfg.base);
  }
  return tot;
}

SystemDeriv system_deriv(const PlantConfig& cfg, const SystemState& s,
                         double delta_P_L, const std::vector<double>& p_vir) {
  if (s.wtgs.size() != cfg.wtgs.size() || p_vir.size() != cfg.wtgs.size()) {
    throw std::invalid_argument("system_deriv: size mismatch");
  }
  SystemDeriv d;
  d.wtgs.resize(s.wtgs.size());
  for (size_t i = 0; i < s.wtgs.size(); ++i) {
    const WtgState& w = s.wtgs[i];
    const WtgUnit& u = cfg.wtgs[i];
    if (!(w.omega_t > 0.0) || !(w.omega_g > 0.0)) {
      throw SimulationFault("turbine " + std::to_string(i + 1) +
                            " rotor speed reached zero");
    }
    const double T_m = mechanical_power(u.v_w, w.omega_t, u.beta, u.params) / w.omega_t;
    const double T_e = w.P_e / w.omega_g;
    const WtgDeriv wd = drive_train_deriv(w, T_m, T_e, u.params);
    const double P_ref = mpp_reference(w.omega_g, u.params) + p_vir[i];
    d.wtgs[i].omega_t = wd.domega_t;
    d.wtgs[i].omega_g = wd.domega_g;
    d.wtgs[i].theta_sh = wd.dtheta_sh;
    d.wtgs[i].P_e = power_loop_deriv(w.P_e, P_ref, u.params.a_P);
  }
  const GridDeriv gd = grid_deriv(s.grid, delta_p_tot(cfg, s, delta_P_L), cfg.grid);
  d.grid.delta_P_g = gd.ddelta_P_g;
  d.grid.delta_omega = gd.ddelta_omega;
  return d;
}

SystemState equilibrium_state(const PlantConfig& cfg) {
  SystemState s;
  s.wtgs.resize(cfg.wtgs.size());
  for (size_t i = 0; i < cfg.wtgs.size(); ++i) {
    const WtgUnit& u = cfg.wtgs[i];
    const double T_m = mechanical_power(u.v_w, u.omega_g0, u.beta, u.params) / u.omega_g0;
    s.wtgs[i].omega_t = u.omega_g0;
    s.wtgs[i].omega_g = u.omega_g0;
    s.wtgs[i].theta_sh = T_m / u.params.K_sh;
    s.wtgs[i].P_e = u.P_e0;
  }
  s.grid = GridState{};
  return s;
}

void validate(const WtgParams& p) {
  if (!(p.H_t > 0.0) || !(p.H_g > 0.0) || !(p.K_sh > 0.0) || !(p.a_P > 0.0) ||
      !(p.k_opt > 0.0) || !(p.v_w1 > 0.0)) {
    throw ConfigError("wtg: H_t, H_g, K_sh, a_P, k_opt, v_w1 must be positive");
  }
  if (p.D_sh < 0.0) throw ConfigError("wtg: D_sh must be nonnegative");
  if (!(p.omega_B > 0.0)) throw ConfigError("wtg: omega_B must be positive");
  if (!(p.omega_g_min > 0.0 && p.omega_g_min < 1.0)) {
    throw ConfigError("wtg: omega_g_min must lie in (0, 1)");
  }
  if (!(p.omega_g_max > p.omega_g_min)) {
    throw ConfigError("wtg: omega_g_max must exceed omega_g_min");
  }
  const CpPeak peak = cp_peak();
  if (std::abs(p.lambda_opt - peak.lambda) > 1e-6 ||
      std::abs(p.cp_max - peak.value) > 1e-6) {
    throw ConfigError("wtg: lambda_opt/cp_max do not match the cp curve optimum");
  }
}

void validate(const GridParams& p) {
  if (!(p.M > 0.0) || !(p.T_g > 0.0) || !(p.R_droop > 0.0)) {
    throw ConfigError("grid: M, T_g, R_droop must be positive");
  }
  if (p.D < 0.0) throw ConfigError("grid: D must be nonnegative");
}

}  // namespace vicsim
