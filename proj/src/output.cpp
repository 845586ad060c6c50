#include "vicsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

// Locale-independent shortest %.12g-style rendering.
void append_num(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  out.append(buf, res.ptr);
}

void append_coord(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, 2);
  out.append(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::string render_csv(const TimeSeries& ts) {
  std::string out = "t,delta_omega_pu,f_hz,delta_pg_pu";
  for (size_t i = 1; i <= ts.wtgs.size(); ++i) {
    const std::string n = std::to_string(i);
    out += ",omega_t_" + n + ",omega_g_" + n + ",theta_sh_" + n + ",pe_" + n +
           ",pvir_" + n + ",dpe_" + n;
  }
  out += "\n";
  for (size_t k = 0; k < ts.size(); ++k) {
    append_num(out, ts.t[k]);
    out += ',';
    append_num(out, ts.delta_omega[k]);
    out += ',';
    append_num(out, ts.f_hz[k]);
    out += ',';
    append_num(out, ts.delta_P_g[k]);
    for (const TimeSeries::WtgTrack& tr : ts.wtgs) {
      out += ',';
      append_num(out, tr.omega_t[k]);
      out += ',';
      append_num(out, tr.omega_g[k]);
      out += ',';
      append_num(out, tr.theta_sh[k]);
      out += ',';
      append_num(out, tr.P_e[k]);
      out += ',';
      append_num(out, tr.P_vir[k]);
      out += ',';
      append_num(out, tr.dP_e[k]);
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw SimulationFault("cannot write " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw SimulationFault("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<SvgSeries>& series) {
  constexpr double W = 1200, H = 600;
  constexpr double ML = 80, MR = 30, MT = 50, MB = 60;

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const SvgSeries& s : series) {
    for (size_t i = 0; i < s.x->size(); ++i) {
      const double x = (*s.x)[i], y = (*s.y)[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  const double pad = (y1 - y0) > 0 ? 0.05 * (y1 - y0) : std::max(1e-6, std::abs(y0)) * 0.1;
  y0 -= pad;
  y1 += pad;

  const auto sx = [&](double x) { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); };
  const auto sy = [&](double y) { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1200\" height=\"600\" "
         "viewBox=\"0 0 1200 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"1200\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"600\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">" +
         xml_escape(title) + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + std::to_string(ML) + "\" y1=\"" + std::to_string(H - MB) +
         "\" x2=\"" + std::to_string(W - MR) + "\" y2=\"" + std::to_string(H - MB) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + std::to_string(ML) + "\" y1=\"" + std::to_string(MT) +
         "\" x2=\"" + std::to_string(ML) + "\" y2=\"" + std::to_string(H - MB) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  char buf[64];
  for (int i = 0; i <= 5; ++i) {
    const double fx = x0 + (x1 - x0) * i / 5.0;
    const double px = sx(fx);
    svg += "<line x1=\"" + std::to_string(px) + "\" y1=\"" + std::to_string(H - MB) +
           "\" x2=\"" + std::to_string(px) + "\" y2=\"" + std::to_string(H - MB + 5) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    std::snprintf(buf, sizeof(buf), "%.6g", fx);
    svg += "<text x=\"" + std::to_string(px) + "\" y=\"" + std::to_string(H - MB + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           buf + "</text>\n";

    const double fy = y0 + (y1 - y0) * i / 5.0;
    const double py = sy(fy);
    svg += "<line x1=\"" + std::to_string(ML - 5) + "\" y1=\"" + std::to_string(py) +
           "\" x2=\"" + std::to_string(ML) + "\" y2=\"" + std::to_string(py) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    std::snprintf(buf, sizeof(buf), "%.6g", fy);
    svg += "<text x=\"" + std::to_string(ML - 8) + "\" y=\"" + std::to_string(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + buf +
           "</text>\n";
  }
  svg += "<text x=\"" + std::to_string((ML + W - MR) / 2) + "\" y=\"" +
         std::to_string(H - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + std::to_string((MT + H - MB) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 " +
         std::to_string((MT + H - MB) / 2) + ")\">" + xml_escape(y_label) + "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (size_t i = 0; i < s.x->size(); ++i) {
      const double x = (*s.x)[i], y = (*s.y)[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      append_coord(pts, sx(x));
      pts += ',';
      append_coord(pts, sy(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    if (series.size() > 1) {
      const double ly = MT + 18.0 * static_cast<double>(si);
      svg += "<rect x=\"" + std::to_string(W - MR - 150) + "\" y=\"" + std::to_string(ly) +
             "\" width=\"12\" height=\"12\" fill=\"";
      svg += color;
      svg += "\"/>\n";
      svg += "<text x=\"" + std::to_string(W - MR - 132) + "\" y=\"" +
             std::to_string(ly + 11) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
             xml_escape(s.label) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

OutputBundle write_run_outputs(const std::string& out_dir, const TimeSeries& ts,
                               const RunMetrics& metrics, bool plots) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw SimulationFault("cannot create output directory " + out_dir);

  OutputBundle bundle;
  bundle.csv_path = out_dir + "/timeseries.csv";
  write_text_atomic(bundle.csv_path, render_csv(ts));
  bundle.metrics_path = out_dir + "/metrics.json";
  write_text_atomic(bundle.metrics_path, metrics_to_json(metrics));

  if (plots) {
    {
      std::vector<SvgSeries> s{{"frequency", &ts.t, &ts.f_hz}};
      const std::string path = out_dir + "/frequency.svg";
      write_text_atomic(path, render_svg("grid frequency", "time (s)", "frequency (Hz)", s));
      bundle.plot_paths.push_back(path);
    }
    {
      std::vector<SvgSeries> s;
      for (size_t i = 0; i < ts.wtgs.size(); ++i) {
        s.push_back({"wtg " + std::to_string(i + 1), &ts.t, &ts.wtgs[i].omega_g});
      }
      const std::string path = out_dir + "/rotor_speed.svg";
      write_text_atomic(path,
                        render_svg("generator rotor speed", "time (s)", "speed (pu)", s));
      bundle.plot_paths.push_back(path);
    }
    {
      std::vector<SvgSeries> s;
      for (size_t i = 0; i < ts.wtgs.size(); ++i) {
        s.push_back({"wtg " + std::to_string(i + 1), &ts.t, &ts.wtgs[i].dP_e});
      }
      const std::string path = out_dir + "/power.svg";
      write_text_atomic(path, render_svg("electric power increment", "time (s)",
                                         "power (pu WTG base)", s));
      bundle.plot_paths.push_back(path);
    }
  }
  return bundle;
}

}  // namespace vicsim
