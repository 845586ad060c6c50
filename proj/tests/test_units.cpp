#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vicsim/errors.hpp"
#include "vicsim/units.hpp"

using namespace vicsim;

TEST_CASE("power base conversion with default ratings") {
  const PowerBase base;
  CHECK(wtg_to_grid_pu(0.3, base) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(grid_to_wtg_pu(0.15, base) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(wtg_to_grid_pu(0.0, base) == 0.0);
}

TEST_CASE("power base round trip") {
  const PowerBase base{3.0, 1.5};
  for (double p : {-0.7, -0.01, 0.0, 0.2, 1.4}) {
    CHECK(grid_to_wtg_pu(wtg_to_grid_pu(p, base), base) == doctest::Approx(p).epsilon(1e-15));
  }
  const PowerBase uneven{7.5, 1.5};
  CHECK(wtg_to_grid_pu(1.0, uneven) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(grid_to_wtg_pu(0.2, uneven) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("angular base derives the turbine-side speed base") {
  const AngularBase base;
  CHECK(base.grid_omega_base == doctest::Approx(377.0).epsilon(1e-15));
  CHECK(base.pole_pairs == 3);
  CHECK(base.wtg_omega_base() == doctest::Approx(377.0 / 3.0).epsilon(1e-15));

  const AngularBase two{377.0, 2};
  CHECK(two.wtg_omega_base() == doctest::Approx(188.5).epsilon(1e-15));
}

TEST_CASE("base validation rejects nonpositive entries") {
  CHECK_THROWS_AS(validate(PowerBase{0.0, 1.5}), ConfigError);
  CHECK_THROWS_AS(validate(PowerBase{3.0, -1.0}), ConfigError);
  CHECK_THROWS_AS(validate(AngularBase{0.0, 3}), ConfigError);
  CHECK_THROWS_AS(validate(AngularBase{377.0, 0}), ConfigError);
  CHECK_NOTHROW(validate(PowerBase{}));
  CHECK_NOTHROW(validate(AngularBase{}));
}
