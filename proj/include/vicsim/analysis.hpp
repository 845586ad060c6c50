#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "vicsim/engine.hpp"
#include "vicsim/plant.hpp"

namespace vicsim {

// Undamped shaft mode frequency, rad/s.
double natural_frequency(const WtgParams& p);

// Shaft twist amplitude (rad) for a sinusoidal electric power order of
// amplitude P_vir (pu WTG base) at frequency s_imag (rad/s) around the
// operating speed omega_g0, mechanical torque frozen.
double torsional_gain(double s_imag, double P_vir, double omega_g0, const WtgParams& p);

// Oscillatory eigenvalue pair of the torque-frozen two-mass linearization.
std::complex<double> frozen_torque_mode(const WtgParams& p);

struct NadirResult {
  double f_hz = 0.0;
  double t_s = 0.0;
};

// Global frequency minimum at or after the event, first occurrence.
NadirResult frequency_nadir(const TimeSeries& ts);

struct DipResult {
  double t_s = 0.0;
  double depth_hz = 0.0;  // relative to nominal
};

// First prominent local frequency minimum after the post-nadir recovery gate
// (frequency back above halfway between nadir and end-of-run level).
std::optional<DipResult> detect_secondary_dip(const TimeSeries& ts, double after_s,
                                              double prominence_hz = 0.01);

// Dominant oscillation frequency (Hz) of x(t) restricted to [w0, w1]:
// linear detrend, then mean half-period between interpolated zero crossings.
// Empty when fewer than four crossings or the detrended residual is at
// numerical noise level.
std::optional<double> oscillation_frequency(const std::vector<double>& t,
                                            const std::vector<double>& x,
                                            double w0, double w1);

// First time after the event from which omega_g stays inside
// [omega_g0 - tol, omega_g0 + tol] through the end of the run. Event time
// itself when the band is never left; empty when the run ends outside it.
std::optional<double> recovery_time(const std::vector<double>& t,
                                    const std::vector<double>& omega_g,
                                    double event_time, double omega_g0, double tol);

struct WtgMetrics {
  double omega_g0_pu = 0.0;
  double P_e0_pu = 0.0;
  double rotor_dip_pu = 0.0;  // omega_g0 - min omega_g at/after the event
  double torsional_peak_to_peak_pu = 0.0;
  std::optional<double> torsional_freq_hz;
  std::optional<double> recovery_time_s;
};

struct RunMetrics {
  double nadir_hz = 0.0;
  double nadir_time_s = 0.0;
  std::optional<double> secondary_dip_time_s;
  std::optional<double> secondary_dip_depth_hz;
  std::optional<double> torsional_freq_hz;       // first turbine
  double torsional_peak_to_peak_pu = 0.0;        // first turbine
  std::optional<double> recovery_time_s;         // slowest turbine; empty if any never recovers
  std::vector<WtgMetrics> wtg;
};

struct MetricsOptions {
  double torsional_window_s = 5.0;   // oscillation frequency window after the event
  double peak_to_peak_window_s = 10.0;
  double recovery_tol_pu = 0.01;
  double dip_prominence_hz = 0.01;
};

RunMetrics compute_metrics(const TimeSeries& ts, const MetricsOptions& opt = {});

std::string metrics_to_json(const RunMetrics& m);

}  // namespace vicsim
