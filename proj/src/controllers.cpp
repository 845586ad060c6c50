#include "vicsim/controllers.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vicsim/errors.hpp"
#include "vicsim/plant.hpp"

namespace vicsim {

double conventional_vic_raw(double delta_omega, double d_delta_omega_dt,
                            const ConventionalVicParams& p) {
  return -p.k_P_vir * delta_omega - p.k_D_vir * d_delta_omega_dt;
}

double conventional_vic(double delta_omega, double d_delta_omega_dt,
                        const ConventionalVicParams& p, double t, double t_event) {
  if (t < t_event || t >= t_event + p.hold_duration) return 0.0;
  return conventional_vic_raw(delta_omega, d_delta_omega_dt, p);
}

double vic_i(double p_vir, double g_val) { return p_vir * g_val; }

double shaping_f(double omega_g, const ShapingF& p) {
  if (omega_g <= p.knee_low) return 0.0;
  if (omega_g >= p.knee_high) return 1.0;
  return (omega_g - p.knee_low) / (p.knee_high - p.knee_low);
}

double shaping_g(double t, const ShapingG& p) {
  if (t < p.t_event) return 0.0;  // disarmed; steps to 1 when the event fires
  if (t <= p.t1) return 1.0;
  const double t_mid = 0.5 * (p.t1 + p.t2);
  if (t <= t_mid) return 1.0 + (p.g_min - 1.0) * (t - p.t1) / (t_mid - p.t1);
  if (t <= p.t2) return p.g_min;
  if (t <= p.t3) return p.g_min * (p.t3 - t) / (p.t3 - p.t2);
  return 0.0;
}

double ohft_u(const std::vector<double>& omega_tg, double delta_omega,
              double delta_P_tot, const OhftGains& gains, const GridParams& grid) {
  if (gains.k.size() != omega_tg.size() + 1) {
    throw std::invalid_argument("ohft_u: need one gain per shaft rate plus one");
  }
  double u = 0.0;
  for (size_t i = 0; i < omega_tg.size(); ++i) {
    u -= grid.M * gains.k[i] * omega_tg[i];
  }
  u -= (grid.M * gains.k.back() - grid.D) * delta_omega;
  u -= delta_P_tot;
  return u;
}

double compensate_interface(double u, double du_dt, double a_P) {
  return u + du_dt / a_P;
}

double proposed_pvir_single(double p_vir_conv, double u_prime, double omega_g,
                            double t, const ShapingF& f, const ShapingG& g) {
  return (p_vir_conv + u_prime) * shaping_f(omega_g, f) * shaping_g(t, g);
}

std::vector<double> participation_factors(const std::vector<double>& P_e0) {
  if (P_e0.empty()) throw std::invalid_argument("participation_factors: empty input");
  const double sum = std::accumulate(P_e0.begin(), P_e0.end(), 0.0);
  if (!(sum > 0.0)) {
    throw std::invalid_argument("participation_factors: total power must be positive");
  }
  std::vector<double> pf(P_e0.size());
  for (size_t i = 0; i < P_e0.size(); ++i) pf[i] = P_e0[i] / sum;
  return pf;
}

std::vector<double> proposed_pvir_multi(double p_vir_conv_grid, double u_prime_grid,
                                        const std::vector<double>& omega_g,
                                        const std::vector<double>& pf, double t,
                                        const ShapingF& f, const ShapingG& g,
                                        const PowerBase& base) {
  if (omega_g.size() != pf.size()) {
    throw std::invalid_argument("proposed_pvir_multi: size mismatch");
  }
  const double common = (p_vir_conv_grid + u_prime_grid) * shaping_g(t, g);
  std::vector<double> out(omega_g.size());
  for (size_t i = 0; i < omega_g.size(); ++i) {
    const double share_grid = common * pf[i] * shaping_f(omega_g[i], f);
    out[i] = grid_to_wtg_pu(share_grid, base);
  }
  return out;
}

void validate(const ConventionalVicParams& p) {
  if (p.k_P_vir < 0.0 || p.k_D_vir < 0.0) {
    throw ConfigError("conventional vic: gains must be nonnegative");
  }
  if (!(p.hold_duration > 0.0)) {
    throw ConfigError("conventional vic: hold_duration must be positive");
  }
}

void validate(const ShapingF& p) {
  if (!(p.knee_low < p.knee_high)) {
    throw ConfigError("shaping f: knee_low must lie below knee_high");
  }
}

void validate(const ShapingG& p) {
  if (!(p.t_event <= p.t1 && p.t1 < p.t2 && p.t2 < p.t3)) {
    throw ConfigError("shaping g: need t_event <= t1 < t2 < t3");
  }
  if (!(p.g_min < 0.0)) {
    throw ConfigError("shaping g: g_min must be negative");
  }
}

}  // namespace vicsim
