#pragma once

#include <vector>

#include "vicsim/plant.hpp"
#include "vicsim/units.hpp"

namespace vicsim {

// Droop-plus-derivative virtual inertia response.
struct ConventionalVicParams {
  double k_P_vir = 7.0;
  double k_D_vir = 2.0;
  double hold_duration = 20.0;  // s; active window length after the event
};

// Rotor-speed gate: 0 below knee_low, linear ramp, 1 above knee_high.
struct ShapingF {
  double knee_low = 0.71;
  double knee_high = 0.95;
};

// Time envelope: armed at the event, support plateau to t1, crossing to the
// absorb plateau g_min held until t2, decaying to 0 at t3.
struct ShapingG {
  double t_event = 20.0;
  double t1 = 25.0;
  double t2 = 52.0;
  double t3 = 79.0;
  double g_min = -0.5;
};

// Feedback gains k_1..k_{N+1} for the chain-form controller (N turbines).
struct OhftGains {
  std::vector<double> k;
};

// Raw droop-plus-derivative law, windowed: nonzero only on
// [t_event, t_event + hold_duration). Output pu on the caller's base.
double conventional_vic(double delta_omega, double d_delta_omega_dt,
                        const ConventionalVicParams& p, double t, double t_event);

// Unwindowed law used as the input of the shaped controllers.
double conventional_vic_raw(double delta_omega, double d_delta_omega_dt,
                            const ConventionalVicParams& p);

// Time-shaped variant: the raw law scaled by the g envelope.
double vic_i(double p_vir, double g_val);

double shaping_f(double omega_g, const ShapingF& p);
double shaping_g(double t, const ShapingG& p);

// Chain-form feedback on (shaft twist rates, frequency deviation) plus
// cancellation of the measured grid imbalance. All inputs and the output are
// pu grid base; omega_tg holds omega_t - omega_g per turbine.
double ohft_u(const std::vector<double>& omega_tg, double delta_omega,
              double delta_P_tot, const OhftGains& gains, const GridParams& grid);

// Lead compensation for the first-order power tracking loop.
double compensate_interface(double u, double du_dt, double a_P);

// Single-turbine shaped output, pu WTG base. p_vir_conv and u_prime are pu
// WTG base.
double proposed_pvir_single(double p_vir_conv, double u_prime, double omega_g,
                            double t, const ShapingF& f, const ShapingG& g);

// Steady-state power shares used to split the common support signal.
std::vector<double> participation_factors(const std::vector<double>& P_e0);

// Multi-turbine split: common grid-base signal shared by participation factor
// and each turbine's own speed gate, returned pu WTG base per turbine.
std::vector<double> proposed_pvir_multi(double p_vir_conv_grid, double u_prime_grid,
                                        const std::vector<double>& omega_g,
                                        const std::vector<double>& pf, double t,
                                        const ShapingF& f, const ShapingG& g,
                                        const PowerBase& base);

void validate(const ConventionalVicParams& p);
void validate(const ShapingF& p);
void validate(const ShapingG& p);

}  // namespace vicsim
