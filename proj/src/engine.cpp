#include "vicsim/engine.hpp"

#include <cmath>
#include <string>

#include "vicsim/errors.hpp"
#include "vicsim/gains.hpp"

namespace vicsim {

std::string to_string(ControllerType t) {
  switch (t) {
    case ControllerType::none: return "none";
    case ControllerType::conventional: return "conventional";
    case ControllerType::vic_i: return "vic-i";
    case ControllerType::proposed: return "proposed";
  }
  return "none";
}

std::optional<ControllerType> controller_type_from_string(const std::string& s) {
  if (s == "none") return ControllerType::none;
  if (s == "conventional") return ControllerType::conventional;
  if (s == "vic-i") return ControllerType::vic_i;
  if (s == "proposed") return ControllerType::proposed;
  return std::nullopt;
}

double axpy_state(double s, double h, double d) { return s + h * d; }

SystemState axpy_state(const SystemState& s, double h, const SystemDeriv& d) {
  SystemState out;
  out.wtgs.resize(s.wtgs.size());
  for (size_t i = 0; i < s.wtgs.size(); ++i) {
    out.wtgs[i].omega_t = s.wtgs[i].omega_t + h * d.wtgs[i].omega_t;
    out.wtgs[i].omega_g = s.wtgs[i].omega_g + h * d.wtgs[i].omega_g;
    out.wtgs[i].theta_sh = s.wtgs[i].theta_sh + h * d.wtgs[i].theta_sh;
    out.wtgs[i].P_e = s.wtgs[i].P_e + h * d.wtgs[i].P_e;
  }
  out.grid.delta_P_g = s.grid.delta_P_g + h * d.grid.delta_P_g;
  out.grid.delta_omega = s.grid.delta_omega + h * d.grid.delta_omega;
  return out;
}

namespace {

void check_multiple(double value, double dt, const char* what) {
  const double m = std::round(value / dt);
  if (std::abs(value - m * dt) > 1e-9) {
    throw ConfigError(std::string(what) +
                      " must be an integer multiple of dt (got " +
                      std::to_string(value) + " with dt " + std::to_string(dt) + ")");
  }
}

bool finite(const SystemState& s) {
  for (const WtgState& w : s.wtgs) {
    if (!std::isfinite(w.omega_t) || !std::isfinite(w.omega_g) ||
        !std::isfinite(w.theta_sh) || !std::isfinite(w.P_e)) {
      return false;
    }
  }
  return std::isfinite(s.grid.delta_P_g) && std::isfinite(s.grid.delta_omega);
}

struct ControlEval {
  std::vector<double> p_vir;     // per turbine, pu WTG base
  double p_vir_conv = 0.0;       // raw droop+derivative law value
  double u_grid = 0.0;
  double u_prime_grid = 0.0;
  double g_val = 0.0;
  double total_grid = 0.0;       // shaped total order, pu grid base
};

class ControllerRuntime {
 public:
  ControllerRuntime(const ScenarioConfig& cfg, const PlantConfig& plant)
      : cfg_(cfg), plant_(plant), g_(cfg.controller.g) {
    g_.t_event = cfg.event.time;
    const size_t n = plant.wtgs.size();
    if (cfg.controller.type == ControllerType::proposed) {
      gains_ = resolve_gains(cfg);
      std::vector<double> pe0(n);
      for (size_t i = 0; i < n; ++i) pe0[i] = plant.wtgs[i].P_e0;
      pf_ = participation_factors(pe0);
    }
  }

  // Start-of-step evaluation. The virtual order enters the model derivative
  // only through the power-loop reference, so the zero-order right-hand side
  // plus a closed-form correction resolves the compensation loop exactly.
  ControlEval eval(const SystemState& s, double t, double delta_P_L) const {
    const size_t n = plant_.wtgs.size();
    ControlEval ev;
    ev.p_vir.assign(n, 0.0);
    ev.g_val = shaping_g(t, g_);
    if (cfg_.controller.type == ControllerType::none) return ev;

    // Model right-hand side at the current state with no virtual order;
    // exact in-model derivatives for the k_D branch and the compensation.
    const std::vector<double> zeros(n, 0.0);
    const SystemDeriv d = system_deriv(plant_, s, delta_P_L, zeros);
    const double d_delta_omega_dt = d.grid.delta_omega;

    switch (cfg_.controller.type) {
      case ControllerType::none:
        break;
      case ControllerType::conventional: {
        const double v = conventional_vic(s.grid.delta_omega, d_delta_omega_dt,
                                          cfg_.controller.conv, t, cfg_.event.time);
        ev.p_vir_conv = conventional_vic_raw(s.grid.delta_omega, d_delta_omega_dt,
                                             cfg_.controller.conv);
        for (size_t i = 0; i < n; ++i) ev.p_vir[i] = v;
        break;
      }
      case ControllerType::vic_i: {
        const double raw = conventional_vic_raw(s.grid.delta_omega, d_delta_omega_dt,
                                                cfg_.controller.conv);
        ev.p_vir_conv = raw;
        const double v = vic_i(raw, ev.g_val);
        for (size_t i = 0; i < n; ++i) ev.p_vir[i] = v;
        break;
      }
      case ControllerType::proposed: {
        std::vector<double> omega_tg(n);
        std::vector<double> d_omega_tg(n);
        for (size_t i = 0; i < n; ++i) {
          omega_tg[i] = s.wtgs[i].omega_t - s.wtgs[i].omega_g;
          d_omega_tg[i] = d.wtgs[i].omega_t - d.wtgs[i].omega_g;
        }
        const double tot = delta_p_tot(plant_, s, delta_P_L);
        double d_tot = d.grid.delta_P_g;
        for (size_t i = 0; i < n; ++i) {
          d_tot += wtg_to_grid_pu(d.wtgs[i].P_e, plant_.base);
        }

        // Split the state feedback into its shaft-rate part and the rest,
        // each compensated for the power-loop lag along the model flow at
        // zero virtual order; the load is piecewise constant so its rate
        // never enters.
        const double u_twist = ohft_u(omega_tg, 0.0, 0.0, gains_, plant_.grid);
        const double u_slow =
            ohft_u(zeros, s.grid.delta_omega, tot, gains_, plant_.grid);
        ev.u_grid = u_twist + u_slow;
        const double a_P = plant_.wtgs.front().params.a_P;
        const double tw = compensate_interface(
            u_twist, ohft_u(d_omega_tg, 0.0, 0.0, gains_, plant_.grid), a_P);
        const double sl = compensate_interface(
            u_slow, ohft_u(zeros, d.grid.delta_omega, d_tot, gains_, plant_.grid),
            a_P);

        const double raw = conventional_vic_raw(s.grid.delta_omega, d_delta_omega_dt,
                                                cfg_.controller.conv);
        ev.p_vir_conv = raw;

        // While the envelope is positive the applied order feeds back into
        // du/dt through the power loop as -a_P * sum_i wtg_to_grid(p_vir_i);
        // after the 1/a_P lead that is an algebraic loop in the
        // non-torsional channel, closed in one division:
        //   u' = (raw + sl + tw) / (1 + g * phi) - raw,
        // phi being the participation-weighted speed gate. A negative
        // envelope reverses the rotor energy flow; it must not flip the
        // state feedback with it. Flipped shaft-rate feedback anti-damps
        // the torsional mode and flipped frequency regulation destabilizes
        // the grid channel, so in that phase the droop law alone rides g,
        // the shaft-rate part rides |g| (u' = -tw), and the regulation
        // channel stays out.
        if (n == 1) {
          const double phi = shaping_f(s.wtgs[0].omega_g, cfg_.controller.f);
          const double raw_grid = wtg_to_grid_pu(raw, plant_.base);
          ev.u_prime_grid =
              ev.g_val < 0.0
                  ? -tw
                  : (raw_grid + sl + tw) / (1.0 + ev.g_val * phi) - raw_grid;
          const double u_prime_wtg = grid_to_wtg_pu(ev.u_prime_grid, plant_.base);
          ev.p_vir[0] = proposed_pvir_single(raw, u_prime_wtg, s.wtgs[0].omega_g, t,
                                             cfg_.controller.f, g_);
          ev.total_grid = wtg_to_grid_pu(ev.p_vir[0], plant_.base);
        } else {
          std::vector<double> omega_g(n);
          for (size_t i = 0; i < n; ++i) omega_g[i] = s.wtgs[i].omega_g;
          double phi = 0.0;
          for (size_t i = 0; i < n; ++i) {
            phi += pf_[i] * shaping_f(omega_g[i], cfg_.controller.f);
          }
          ev.u_prime_grid =
              ev.g_val < 0.0
                  ? -tw
                  : (raw + sl + tw) / (1.0 + ev.g_val * phi) - raw;
          ev.p_vir = proposed_pvir_multi(raw, ev.u_prime_grid, omega_g, pf_, t,
                                         cfg_.controller.f, g_, plant_.base);
          ev.total_grid = (raw + ev.u_prime_grid) * ev.g_val * phi;
        }
        return ev;
      }
    }
    double tot = 0.0;
    for (size_t i = 0; i < n; ++i) tot += wtg_to_grid_pu(ev.p_vir[i], plant_.base);
    ev.total_grid = tot;
    return ev;
  }

 private:
  const ScenarioConfig& cfg_;
  const PlantConfig& plant_;
  ShapingG g_;
  OhftGains gains_;
  std::vector<double> pf_;
};

}  // namespace

PlantConfig resolve_plant(const ScenarioConfig& cfg) {
  PlantConfig plant;
  plant.base = cfg.power_base;
  plant.grid = cfg.grid;
  plant.grid.delta_P_L = cfg.event.delta_P_L;
  plant.wtgs.reserve(cfg.wtgs.size());
  for (const WtgSpec& spec : cfg.wtgs) {
    WtgUnit u;
    u.params = spec.params;
    u.v_w = spec.v_w;
    u.beta = spec.beta;
    const MppEquilibrium eq = mpp_equilibrium(spec.v_w, spec.params);
    u.omega_g0 = eq.omega_g0;
    u.P_e0 = eq.P_e0;
    plant.wtgs.push_back(u);
  }
  return plant;
}

void validate(const ScenarioConfig& cfg) {
  validate(cfg.power_base);
  validate(cfg.angular_base);
  validate(cfg.grid);
  if (cfg.wtgs.empty()) throw ConfigError("at least one turbine is required");
  for (const WtgSpec& w : cfg.wtgs) {
    validate(w.params);
    if (!(w.v_w > 0.0)) throw ConfigError("wind_speed must be positive");
  }
  validate(cfg.controller.conv);
  validate(cfg.controller.f);
  ShapingG g = cfg.controller.g;
  g.t_event = cfg.event.time;
  validate(g);
  if (cfg.controller.type == ControllerType::proposed) {
    for (const WtgSpec& w : cfg.wtgs) {
      if (w.params.omega_g_min > cfg.controller.f.knee_low + 1e-12) {
        throw ConfigError("speed gate knee_low must not sit below omega_g_min");
      }
    }
    const size_t expect = cfg.wtgs.size() + 1;
    if (!cfg.controller.explicit_gains.empty() &&
        cfg.controller.explicit_gains.size() != expect) {
      throw ConfigError("explicit gains must have one entry per turbine plus one");
    }
    if (!cfg.controller.q_diag.empty() && cfg.controller.q_diag.size() != expect) {
      throw ConfigError("lqr q must have one entry per turbine plus one");
    }
    for (double q : cfg.controller.q_diag) {
      if (!(q > 0.0)) throw ConfigError("lqr q entries must be positive");
    }
    if (!(cfg.controller.alpha > 0.0)) throw ConfigError("lqr alpha must be positive");
  }
  if (!(cfg.sim.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(cfg.sim.dt > 0.0)) throw ConfigError("dt must be positive");
  if (cfg.sim.record_stride < 1) throw ConfigError("record_stride must be at least 1");
  if (cfg.event.time < 0.0) throw ConfigError("event time must be nonnegative");
  check_multiple(cfg.sim.t_end, cfg.sim.dt, "t_end");
  check_multiple(cfg.event.time, cfg.sim.dt, "event time");
}

OhftGains resolve_gains(const ScenarioConfig& cfg) {
  const size_t n = cfg.wtgs.size() + 1;
  if (!cfg.controller.explicit_gains.empty()) {
    if (cfg.controller.explicit_gains.size() != n) {
      throw SynthesisError("explicit gains must have " + std::to_string(n) +
                           " entries");
    }
    OhftGains gains{cfg.controller.explicit_gains};
    const HurwitzResult h = hurwitz_check(gains);
    if (!h.stable) {
      throw SynthesisError("explicit gains failed the Hurwitz check: closed-loop "
                           "polynomial has a nonnegative-real-part root");
    }
    return gains;
  }
  const BrunovskyChain chain = brunovsky_chain(static_cast<int>(n));
  LqrWeights w;
  w.alpha = cfg.controller.alpha;
  if (!cfg.controller.q_diag.empty()) {
    w.Q = Eigen::MatrixXd::Zero(n, n);
    for (size_t i = 0; i < n; ++i) w.Q(i, i) = cfg.controller.q_diag[i];
  } else if (n == 2) {
    w.Q = Eigen::MatrixXd::Zero(2, 2);
    w.Q(0, 0) = 7.0;
    w.Q(1, 1) = 1.0;
  } else {
    w.Q = Eigen::MatrixXd::Identity(n, n);
  }
  return lqr_gains(chain, w).gains;
}

TimeSeries run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const PlantConfig plant = resolve_plant(cfg);
  const ControllerRuntime controller(cfg, plant);

  const double dt = cfg.sim.dt;
  const long long steps = std::llround(cfg.sim.t_end / dt);
  const long long event_step = std::llround(cfg.event.time / dt);
  const bool has_event = cfg.event.delta_P_L != 0.0;

  const size_t n = plant.wtgs.size();
  TimeSeries ts;
  ts.event_time = cfg.event.time;
  ts.wtgs.resize(n);
  const size_t samples = static_cast<size_t>(steps / cfg.sim.record_stride) + 2;
  ts.t.reserve(samples);
  ts.delta_omega.reserve(samples);
  ts.f_hz.reserve(samples);
  ts.delta_P_g.reserve(samples);
  for (size_t i = 0; i < n; ++i) {
    ts.wtgs[i].omega_g0 = plant.wtgs[i].omega_g0;
    ts.wtgs[i].P_e0 = plant.wtgs[i].P_e0;
  }

  SystemState state = equilibrium_state(plant);

  for (long long k = 0; k <= steps; ++k) {
    const double t = k * dt;
    // The load is frozen per macro step by the step's start time, so the
    // integrator always sees a smooth right-hand side.
    const double delta_P_L = (has_event && k >= event_step) ? cfg.event.delta_P_L : 0.0;
    const ControlEval ev = controller.eval(state, t, delta_P_L);

    if (k % cfg.sim.record_stride == 0 || k == steps) {
      ts.t.push_back(t);
      ts.delta_omega.push_back(state.grid.delta_omega);
      ts.f_hz.push_back(ts.f_nominal_hz * (1.0 + state.grid.delta_omega));
      ts.delta_P_g.push_back(state.grid.delta_P_g);
      ts.g_val.push_back(ev.g_val);
      ts.u_grid.push_back(ev.u_grid);
      ts.u_prime_grid.push_back(ev.u_prime_grid);
      ts.p_vir_conv.push_back(ev.p_vir_conv);
      ts.p_vir_total_grid.push_back(ev.total_grid);
      for (size_t i = 0; i < n; ++i) {
        TimeSeries::WtgTrack& tr = ts.wtgs[i];
        const WtgState& w = state.wtgs[i];
        tr.omega_t.push_back(w.omega_t);
        tr.omega_g.push_back(w.omega_g);
        tr.theta_sh.push_back(w.theta_sh);
        tr.P_e.push_back(w.P_e);
        tr.P_vir.push_back(ev.p_vir[i]);
        tr.dP_e.push_back(mpp_reference(w.omega_g, plant.wtgs[i].params) -
                          mpp_reference(plant.wtgs[i].omega_g0, plant.wtgs[i].params) +
                          ev.p_vir[i]);
      }
    }
    if (k == steps) break;

    const auto rhs = [&](const SystemState& s, double) {
      return system_deriv(plant, s, delta_P_L, ev.p_vir);
    };
    state = rk4_step(state, t, dt, rhs);
    if (!finite(state)) {
      throw SimulationFault("non-finite state at t = " + std::to_string(t + dt) + " s");
    }
  }
  return ts;
}

}  // namespace vicsim
