#include "vicsim/units.hpp"

#include "vicsim/errors.hpp"

namespace vicsim {

double wtg_to_grid_pu(double p, const PowerBase& base) {
  return p * base.wtg_rated_mw / base.grid_rated_mw;
}

double grid_to_wtg_pu(double p, const PowerBase& base) {
  return p * base.grid_rated_mw / base.wtg_rated_mw;
}

void validate(const PowerBase& base) {
  if (!(base.grid_rated_mw > 0.0) || !(base.wtg_rated_mw > 0.0)) {
    throw ConfigError("power bases must be positive");
  }
}

void validate(const AngularBase& base) {
  if (!(base.grid_omega_base > 0.0)) {
    throw ConfigError("grid_omega_base must be positive");
  }
  if (base.pole_pairs < 1) {
    throw ConfigError("pole_pairs must be at least 1");
  }
}

}  // namespace vicsim
