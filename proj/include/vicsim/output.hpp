#pragma once

#include <string>
#include <vector>

#include "vicsim/analysis.hpp"
#include "vicsim/engine.hpp"

namespace vicsim {

// Canonical CSV rendering: fixed header, %.12g cells, '\n' endings,
// locale-independent. Byte-identical for identical series.
std::string render_csv(const TimeSeries& ts);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

struct SvgSeries {
  std::string label;
  const std::vector<double>* x = nullptr;
  const std::vector<double>* y = nullptr;
};

// Self-contained 1200x600 SVG line chart: axes drawn as <line>, one
// <polyline> per series.
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<SvgSeries>& series);

// Everything one run produces on disk.
struct OutputBundle {
  std::string csv_path;
  std::string metrics_path;
  std::vector<std::string> plot_paths;
};

OutputBundle write_run_outputs(const std::string& out_dir, const TimeSeries& ts,
                               const RunMetrics& metrics, bool plots);

}  // namespace vicsim
