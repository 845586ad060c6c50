#pragma once

namespace vicsim {

// Power ratings used to move per-unit quantities between the turbine base and
// the equivalent-grid base.
struct PowerBase {
  double grid_rated_mw = 3.0;
  double wtg_rated_mw = 1.5;
};

// Electrical speed bases. The turbine-side base is the grid electrical base
// divided by the pole-pair count.
struct AngularBase {
  double grid_omega_base = 377.0;  // rad/s
  int pole_pairs = 3;

  double wtg_omega_base() const { return grid_omega_base / pole_pairs; }
};

// p expressed on the WTG base -> same power on the grid base.
double wtg_to_grid_pu(double p, const PowerBase& base);

// p expressed on the grid base -> same power on the WTG base.
double grid_to_wtg_pu(double p, const PowerBase& base);

void validate(const PowerBase& base);
void validate(const AngularBase& base);

}  // namespace vicsim
