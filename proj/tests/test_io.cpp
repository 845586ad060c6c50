#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vicsim/analysis.hpp"
#include "vicsim/engine.hpp"
#include "vicsim/errors.hpp"
#include "vicsim/output.hpp"
#include "vicsim/scenario.hpp"

using namespace vicsim;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("vicsim_test_" + tag);
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

TimeSeries tiny_series() {
  TimeSeries ts;
  ts.event_time = 20.0;
  ts.t = {0.0, 0.01};
  ts.delta_omega = {0.0, -0.0025};
  ts.f_hz = {60.0, 59.85};
  ts.delta_P_g = {0.0, 0.125};
  TimeSeries::WtgTrack w;
  w.omega_g0 = 1.05;
  w.P_e0 = 0.5;
  w.omega_t = {1.05, 1.0475};
  w.omega_g = {1.05, 1.045};
  w.theta_sh = {0.4, 0.375};
  w.P_e = {0.5, 0.5125};
  w.P_vir = {0.0, 0.05};
  w.dP_e = {0.0, 0.0625};
  ts.wtgs.push_back(w);
  return ts;
}

}  // namespace

TEST_CASE("empty scenario text yields the defaults") {
  const auto cfg = parse_scenario("{}", "test");
  CHECK(cfg.name == "scenario");
  CHECK(cfg.power_base.grid_rated_mw == 3.0);
  CHECK(cfg.power_base.wtg_rated_mw == 1.5);
  CHECK(cfg.grid.M == 4.584);
  REQUIRE(cfg.wtgs.size() == 1);
  CHECK(cfg.wtgs[0].v_w == 10.2);
  CHECK(cfg.wtgs[0].params.omega_B == doctest::Approx(377.0 / 3.0).epsilon(1e-15));
  CHECK(cfg.controller.type == ControllerType::none);
  CHECK(cfg.event.time == 20.0);
  CHECK(cfg.event.delta_P_L == 0.2);
  CHECK(cfg.sim.t_end == 120.0);
  CHECK(cfg.sim.dt == 1e-3);
  CHECK(cfg.sim.record_stride == 10);
  CHECK(cfg.output.plots);
}

TEST_CASE("unknown keys are rejected by full path") {
  try {
    parse_scenario(R"({"grid": {"mm": 1.0}})", "test");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.grid.mm") != std::string::npos);
  }
  try {
    parse_scenario(R"({"controller": {"shaping_g": {"t1": 25.0, "t9": 1.0}}})", "test");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.controller.shaping_g.t9") != std::string::npos);
  }
}

TEST_CASE("scenario type and structure errors") {
  CHECK_THROWS_AS(parse_scenario("not json", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[1,2]", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"grid": {"m": "big"}})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"sim": {"record_stride": 2.5}})", "test"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"output": {"plots": "yes"}})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"wtgs": []})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"controller": {"type": "magic"}})", "test"),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"controller": {"gains": [1, "x"]}})", "test"),
                  ConfigError);
}

TEST_CASE("cross-field validation runs inside parsing") {
  // event time off the integration grid
  CHECK_THROWS_AS(parse_scenario(R"({"event": {"time": 20.0005}})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"sim": {"dt": -0.001}})", "test"), ConfigError);
  // junk aero optimum constants
  CHECK_THROWS_AS(
      parse_scenario(R"({"wtgs": [{"params": {"lambda_opt": 5.0}}]})", "test"),
      ConfigError);
}

TEST_CASE("scenario round trip preserves every field") {
  auto text = R"({
    "name": "rt",
    "bases": {"grid_rated_mw": 7.5, "wtg_rated_mw": 1.5},
    "grid": {"m": 4.584, "d": 1.0, "t_g": 1.2, "r_droop": 0.03},
    "wtgs": [{"wind_speed": 10.8}, {"wind_speed": 8.0}, {"wind_speed": 7.3}],
    "controller": {"type": "proposed", "gains": [2.2361, 5.9389, 6.7687, 3.8128]},
    "event": {"time": 20.0, "delta_p_l": 0.2},
    "sim": {"t_end": 120.0, "dt": 0.001, "record_stride": 10}
  })";
  const auto a = parse_scenario(text, "test");
  const auto b = parse_scenario(scenario_to_json(a), "test");
  CHECK(b.name == a.name);
  CHECK(b.power_base.grid_rated_mw == a.power_base.grid_rated_mw);
  REQUIRE(b.wtgs.size() == a.wtgs.size());
  for (size_t i = 0; i < a.wtgs.size(); ++i) {
    CHECK(b.wtgs[i].v_w == a.wtgs[i].v_w);
    CHECK(b.wtgs[i].params.H_t == a.wtgs[i].params.H_t);
  }
  CHECK(b.controller.type == a.controller.type);
  CHECK(b.controller.explicit_gains == a.controller.explicit_gains);
  CHECK(b.event.time == a.event.time);
  CHECK(b.sim.dt == a.sim.dt);
  // and the rendering itself is stable
  CHECK(scenario_to_json(b) == scenario_to_json(a));
}

TEST_CASE("csv rendering is exact and stable") {
  const auto ts = tiny_series();
  const std::string expected =
      "t,delta_omega_pu,f_hz,delta_pg_pu,"
      "omega_t_1,omega_g_1,theta_sh_1,pe_1,pvir_1,dpe_1\n"
      "0,0,60,0,1.05,1.05,0.4,0.5,0,0\n"
      "0.01,-0.0025,59.85,0.125,1.0475,1.045,0.375,0.5125,0.05,0.0625\n";
  CHECK(render_csv(ts) == expected);
  CHECK(render_csv(ts) == render_csv(ts));
}

TEST_CASE("csv header scales with the turbine count") {
  auto ts = tiny_series();
  ts.wtgs.push_back(ts.wtgs[0]);
  const auto csv = render_csv(ts);
  const auto header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "t,delta_omega_pu,f_hz,delta_pg_pu,"
        "omega_t_1,omega_g_1,theta_sh_1,pe_1,pvir_1,dpe_1,"
        "omega_t_2,omega_g_2,theta_sh_2,pe_2,pvir_2,dpe_2");
}

TEST_CASE("atomic text writing") {
  TempDir dir("atomic");
  const auto path = (dir.path / "out.csv").string();
  write_text_atomic(path, "hello\n");
  CHECK(slurp(path) == "hello\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  write_text_atomic(path, "replaced\n");
  CHECK(slurp(path) == "replaced\n");
}

TEST_CASE("svg chart structure") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y1 = {59.9, 59.7, 59.8, 59.95};
  const std::vector<double> y2 = {1.0, 0.98, 0.99, 1.0};
  const auto svg = render_svg("speed & frequency", "time (s)", "value",
                              {{"f", &x, &y1}, {"w", &x, &y2}});
  CHECK(svg.find("width=\"1200\"") != std::string::npos);
  CHECK(svg.find("height=\"600\"") != std::string::npos);
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(svg.find("<line") != std::string::npos);
  CHECK(svg.find("speed &amp; frequency") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  const auto single = render_svg("one", "x", "y", {{"only", &x, &y1}});
  CHECK(count_occurrences(single, "<polyline") == 1);
}

TEST_CASE("run outputs land in the requested directory") {
  TempDir dir("bundle");
  ScenarioConfig cfg;
  WtgSpec w;
  w.v_w = 10.8;
  cfg.wtgs.push_back(w);
  cfg.controller.type = ControllerType::none;
  cfg.sim.t_end = 5.0;
  cfg.event.time = 1.0;
  cfg.sim.record_stride = 100;
  const auto ts = run_scenario(cfg);
  const auto metrics = compute_metrics(ts);
  const auto bundle = write_run_outputs(dir.path.string(), ts, metrics, true);
  CHECK(std::filesystem::exists(bundle.csv_path));
  CHECK(std::filesystem::exists(bundle.metrics_path));
  REQUIRE(bundle.plot_paths.size() == 3);
  for (const auto& p : bundle.plot_paths) CHECK(std::filesystem::exists(p));
  const auto no_plots_dir = (dir.path / "bare").string();
  const auto bare = write_run_outputs(no_plots_dir, ts, metrics, false);
  CHECK(bare.plot_paths.empty());
  CHECK(std::filesystem::exists(bare.csv_path));
}

TEST_CASE("metrics serialization uses null for absent values") {
  RunMetrics m;
  m.nadir_hz = 59.7;
  m.nadir_time_s = 24.0;
  m.torsional_peak_to_peak_pu = 0.01;
  WtgMetrics wm;
  wm.omega_g0_pu = 1.0;
  m.wtg.push_back(wm);
  const auto js = metrics_to_json(m);
  CHECK(js.find("\"secondary_dip_time_s\": null") != std::string::npos);
  CHECK(js.find("\"nadir_hz\": 59.7") != std::string::npos);
  CHECK(js.back() == '\n');
}

TEST_CASE("scenario file loading reports the path") {
  TempDir dir("scen");
  const auto path = (dir.path / "s.json").string();
  write_text_atomic(path, R"({"grid": {"zz": 1}})");
  try {
    load_scenario_file(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
  CHECK_THROWS_AS(load_scenario_file((dir.path / "missing.json").string()), ConfigError);
}
