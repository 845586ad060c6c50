#include "vicsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include <json.hpp>

namespace vicsim {

double natural_frequency(const WtgParams& p) {
  return std::sqrt(p.omega_B * p.K_sh * p.H_tg() / (2.0 * p.H_t * p.H_g));
}

double torsional_gain(double s_imag, double P_vir, double omega_g0, const WtgParams& p) {
  const double a = p.D_sh * p.omega_B;
  const double b = p.K_sh * p.omega_B;
  const double re = b * p.H_tg() - 2.0 * p.H_t * p.H_g * s_imag * s_imag;
  const double im = a * p.H_tg() * s_imag;
  return p.omega_B * p.H_t * std::abs(P_vir / omega_g0) / std::hypot(re, im);
}

std::complex<double> frozen_torque_mode(const WtgParams& p) {
  Eigen::Matrix3d A;
  const double ht2 = 2.0 * p.H_t, hg2 = 2.0 * p.H_g;
  A << -p.D_sh / ht2, p.D_sh / ht2, -p.K_sh / ht2,
       p.D_sh / hg2, -p.D_sh / hg2, p.K_sh / hg2,
       p.omega_B, -p.omega_B, 0.0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(A);
  std::complex<double> best = es.eigenvalues()(0);
  for (int i = 1; i < 3; ++i) {
    if (es.eigenvalues()(i).imag() > best.imag()) best = es.eigenvalues()(i);
  }
  return best;
}

NadirResult frequency_nadir(const TimeSeries& ts) {
  NadirResult r{ts.f_nominal_hz, ts.event_time};
  bool found = false;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts.t[i] < ts.event_time) continue;
    if (!found || ts.f_hz[i] < r.f_hz) {
      r.f_hz = ts.f_hz[i];
      r.t_s = ts.t[i];
      found = true;
    }
  }
  return r;
}

std::optional<DipResult> detect_secondary_dip(const TimeSeries& ts, double after_s,
                                              double prominence_hz) {
  // Work on the post-event tail only.
  size_t begin = 0;
  while (begin < ts.size() && ts.t[begin] < after_s) ++begin;
  if (ts.size() - begin < 3) return std::nullopt;

  const NadirResult nadir = frequency_nadir(ts);
  // Recovery gate: halfway back from the nadir toward nominal.
  const double gate = nadir.f_hz + 0.5 * (ts.f_nominal_hz - nadir.f_hz);
  size_t i_rec = ts.size();
  for (size_t i = begin; i < ts.size(); ++i) {
    if (ts.t[i] > nadir.t_s && ts.f_hz[i] >= gate) {
      i_rec = i;
      break;
    }
  }
  if (i_rec >= ts.size()) return std::nullopt;

  // First local minimum after the gate that clears the prominence threshold
  // and falls back below the gate. Small governor-ringdown wobbles sit well
  // above the gate; a dip that does not give back half of the recovered
  // depth is not a secondary dip.
  double left_max = ts.f_hz[i_rec];
  for (size_t i = i_rec + 1; i + 1 < ts.size(); ++i) {
    left_max = std::max(left_max, ts.f_hz[i]);
    if (ts.f_hz[i] < ts.f_hz[i - 1] && ts.f_hz[i] < ts.f_hz[i + 1] &&
        ts.f_hz[i] < gate) {
      double right_max = ts.f_hz[i];
      for (size_t j = i; j < ts.size(); ++j) right_max = std::max(right_max, ts.f_hz[j]);
      const double prominence = std::min(left_max, right_max) - ts.f_hz[i];
      if (prominence >= prominence_hz) {
        return DipResult{ts.t[i], ts.f_nominal_hz - ts.f_hz[i]};
      }
    }
  }
  return std::nullopt;
}

std::optional<double> oscillation_frequency(const std::vector<double>& t,
                                            const std::vector<double>& x,
                                            double w0, double w1) {
  std::vector<double> tt, xx;
  double max_abs_raw = 0.0;
  for (size_t i = 0; i < t.size() && i < x.size(); ++i) {
    if (t[i] < w0 || t[i] > w1) continue;
    tt.push_back(t[i]);
    xx.push_back(x[i]);
    max_abs_raw = std::max(max_abs_raw, std::abs(x[i]));
  }
  if (tt.size() < 4) return std::nullopt;

  // Least-squares linear detrend.
  const size_t m = tt.size();
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (size_t i = 0; i < m; ++i) {
    st += tt[i];
    sx += xx[i];
    stt += tt[i] * tt[i];
    stx += tt[i] * xx[i];
  }
  const double den = m * stt - st * st;
  const double slope = den != 0.0 ? (m * stx - st * sx) / den : 0.0;
  const double inter = (sx - slope * st) / m;
  double max_abs_det = 0.0;
  for (size_t i = 0; i < m; ++i) {
    xx[i] -= inter + slope * tt[i];
    max_abs_det = std::max(max_abs_det, std::abs(xx[i]));
  }
  if (max_abs_det <= 1e-12 * std::max(1.0, max_abs_raw)) return std::nullopt;

  std::vector<double> crossings;
  for (size_t i = 0; i + 1 < m; ++i) {
    if (xx[i] == 0.0) {
      if (crossings.empty() || crossings.back() != tt[i]) crossings.push_back(tt[i]);
    } else if (xx[i] * xx[i + 1] < 0.0) {
      const double tau = tt[i] + xx[i] / (xx[i] - xx[i + 1]) * (tt[i + 1] - tt[i]);
      crossings.push_back(tau);
    }
  }
  if (crossings.size() < 4) return std::nullopt;
  const double half_period =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  if (!(half_period > 0.0)) return std::nullopt;
  return 1.0 / (2.0 * half_period);
}

std::optional<double> recovery_time(const std::vector<double>& t,
                                    const std::vector<double>& omega_g,
                                    double event_time, double omega_g0, double tol) {
  size_t begin = 0;
  while (begin < t.size() && t[begin] < event_time) ++begin;
  if (begin >= t.size()) return std::nullopt;

  size_t last_outside = t.size();
  for (size_t i = t.size(); i-- > begin;) {
    if (std::abs(omega_g[i] - omega_g0) > tol) {
      last_outside = i;
      break;
    }
  }
  if (last_outside == t.size()) return event_time;   // never left the band
  if (last_outside + 1 >= t.size()) return std::nullopt;  // ends outside
  return t[last_outside + 1];
}

RunMetrics compute_metrics(const TimeSeries& ts, const MetricsOptions& opt) {
  RunMetrics m;
  const NadirResult nadir = frequency_nadir(ts);
  m.nadir_hz = nadir.f_hz;
  m.nadir_time_s = nadir.t_s;
  if (const auto dip = detect_secondary_dip(ts, ts.event_time, opt.dip_prominence_hz)) {
    m.secondary_dip_time_s = dip->t_s;
    m.secondary_dip_depth_hz = dip->depth_hz;
  }
  for (const TimeSeries::WtgTrack& tr : ts.wtgs) {
    WtgMetrics wm;
    wm.omega_g0_pu = tr.omega_g0;
    wm.P_e0_pu = tr.P_e0;
    std::vector<double> twist_rate(ts.size());
    double min_omega_g = tr.omega_g0;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (size_t i = 0; i < ts.size(); ++i) {
      twist_rate[i] = tr.omega_t[i] - tr.omega_g[i];
      if (ts.t[i] < ts.event_time) continue;
      min_omega_g = std::min(min_omega_g, tr.omega_g[i]);
      if (ts.t[i] <= ts.event_time + opt.peak_to_peak_window_s) {
        if (!any) {
          lo = hi = twist_rate[i];
          any = true;
        }
        lo = std::min(lo, twist_rate[i]);
        hi = std::max(hi, twist_rate[i]);
      }
    }
    wm.rotor_dip_pu = tr.omega_g0 - min_omega_g;
    wm.torsional_peak_to_peak_pu = any ? hi - lo : 0.0;
    wm.torsional_freq_hz = oscillation_frequency(
        ts.t, twist_rate, ts.event_time, ts.event_time + opt.torsional_window_s);
    wm.recovery_time_s =
        recovery_time(ts.t, tr.omega_g, ts.event_time, tr.omega_g0, opt.recovery_tol_pu);
    m.wtg.push_back(wm);
  }
  if (!m.wtg.empty()) {
    m.torsional_freq_hz = m.wtg.front().torsional_freq_hz;
    m.torsional_peak_to_peak_pu = m.wtg.front().torsional_peak_to_peak_pu;
    bool all = true;
    double worst = 0.0;
    for (const WtgMetrics& wm : m.wtg) {
      if (!wm.recovery_time_s) {
        all = false;
        break;
      }
      worst = std::max(worst, *wm.recovery_time_s);
    }
    if (all) m.recovery_time_s = worst;
  }
  return m;
}

std::string metrics_to_json(const RunMetrics& m) {
  nlohmann::ordered_json j;
  j["nadir_hz"] = m.nadir_hz;
  j["nadir_time_s"] = m.nadir_time_s;
  j["secondary_dip_time_s"] =
      m.secondary_dip_time_s ? nlohmann::json(*m.secondary_dip_time_s) : nullptr;
  j["secondary_dip_depth_hz"] =
      m.secondary_dip_depth_hz ? nlohmann::json(*m.secondary_dip_depth_hz) : nullptr;
  j["torsional_freq_hz"] =
      m.torsional_freq_hz ? nlohmann::json(*m.torsional_freq_hz) : nullptr;
  j["torsional_peak_to_peak_pu"] = m.torsional_peak_to_peak_pu;
  j["recovery_time_s"] = m.recovery_time_s ? nlohmann::json(*m.recovery_time_s) : nullptr;
  j["wtg"] = nlohmann::ordered_json::array();
  for (const WtgMetrics& wm : m.wtg) {
    nlohmann::ordered_json w;
    w["omega_g0_pu"] = wm.omega_g0_pu;
    w["p_e0_pu"] = wm.P_e0_pu;
    w["rotor_dip_pu"] = wm.rotor_dip_pu;
    w["torsional_peak_to_peak_pu"] = wm.torsional_peak_to_peak_pu;
    w["torsional_freq_hz"] =
        wm.torsional_freq_hz ? nlohmann::json(*wm.torsional_freq_hz) : nullptr;
    w["recovery_time_s"] =
        wm.recovery_time_s ? nlohmann::json(*wm.recovery_time_s) : nullptr;
    j["wtg"].push_back(w);
  }
  return j.dump(2) + "\n";
}

}  // namespace vicsim
