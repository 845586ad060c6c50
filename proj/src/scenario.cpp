#include "vicsim/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  std::vector<std::string> unknown;
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        ok = true;
        break;
      }
    }
    if (!ok) unknown.push_back(path + "." + item.key());
  }
  if (!unknown.empty()) {
    std::string msg = "unknown key(s):";
    for (const std::string& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
}

const json& expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + " must be an object");
  return j;
}

void read_num(const json& j, const std::string& path, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ConfigError(path + "." + key + " must be a number");
  out = j.at(key).get<double>();
}

void read_int(const json& j, const std::string& path, const char* key, int& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(path + "." + key + " must be an integer");
  }
  out = j.at(key).get<int>();
}

void read_bool(const json& j, const std::string& path, const char* key, bool& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_boolean()) throw ConfigError(path + "." + key + " must be a boolean");
  out = j.at(key).get<bool>();
}

void read_num_list(const json& j, const std::string& path, const char* key,
                   std::vector<double>& out) {
  if (!j.contains(key)) return;
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ConfigError(path + "." + key + " must be an array");
  out.clear();
  for (const json& v : arr) {
    if (!v.is_number()) throw ConfigError(path + "." + key + " entries must be numbers");
    out.push_back(v.get<double>());
  }
}

WtgParams parse_wtg_params(const json& j, const std::string& path, double default_omega_B) {
  WtgParams p;
  p.omega_B = default_omega_B;
  reject_unknown_keys(j, path,
                      {"h_t", "h_g", "k_sh", "d_sh", "omega_b", "a_p", "k_opt",
                       "omega_g_min", "omega_g_max", "v_w1", "lambda_opt", "cp_max"});
  read_num(j, path, "h_t", p.H_t);
  read_num(j, path, "h_g", p.H_g);
  read_num(j, path, "k_sh", p.K_sh);
  read_num(j, path, "d_sh", p.D_sh);
  read_num(j, path, "omega_b", p.omega_B);
  read_num(j, path, "a_p", p.a_P);
  read_num(j, path, "k_opt", p.k_opt);
  read_num(j, path, "omega_g_min", p.omega_g_min);
  read_num(j, path, "omega_g_max", p.omega_g_max);
  read_num(j, path, "v_w1", p.v_w1);
  read_num(j, path, "lambda_opt", p.lambda_opt);
  read_num(j, path, "cp_max", p.cp_max);
  return p;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  expect_object(root, origin);
  reject_unknown_keys(root, origin,
                      {"name", "bases", "grid", "wtgs", "controller", "event", "sim",
                       "output"});

  ScenarioConfig cfg;
  if (root.contains("name")) {
    if (!root.at("name").is_string()) throw ConfigError(origin + ".name must be a string");
    cfg.name = root.at("name").get<std::string>();
  }

  if (root.contains("bases")) {
    const json& b = expect_object(root.at("bases"), origin + ".bases");
    reject_unknown_keys(b, origin + ".bases",
                        {"grid_rated_mw", "wtg_rated_mw", "grid_omega_base", "pole_pairs"});
    read_num(b, origin + ".bases", "grid_rated_mw", cfg.power_base.grid_rated_mw);
    read_num(b, origin + ".bases", "wtg_rated_mw", cfg.power_base.wtg_rated_mw);
    read_num(b, origin + ".bases", "grid_omega_base", cfg.angular_base.grid_omega_base);
    read_int(b, origin + ".bases", "pole_pairs", cfg.angular_base.pole_pairs);
  }

  if (root.contains("grid")) {
    const json& g = expect_object(root.at("grid"), origin + ".grid");
    reject_unknown_keys(g, origin + ".grid", {"m", "d", "t_g", "r_droop"});
    read_num(g, origin + ".grid", "m", cfg.grid.M);
    read_num(g, origin + ".grid", "d", cfg.grid.D);
    read_num(g, origin + ".grid", "t_g", cfg.grid.T_g);
    read_num(g, origin + ".grid", "r_droop", cfg.grid.R_droop);
  }

  if (root.contains("wtgs")) {
    const json& arr = root.at("wtgs");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError(origin + ".wtgs must be a nonempty array");
    }
    cfg.wtgs.clear();
    int idx = 1;
    for (const json& wj : arr) {
      const std::string path = origin + ".wtgs[" + std::to_string(idx++) + "]";
      expect_object(wj, path);
      reject_unknown_keys(wj, path, {"wind_speed", "params"});
      WtgSpec spec;
      if (wj.contains("params")) {
        spec.params = parse_wtg_params(expect_object(wj.at("params"), path + ".params"),
                                       path + ".params",
                                       cfg.angular_base.wtg_omega_base());
      } else {
        spec.params.omega_B = cfg.angular_base.wtg_omega_base();
      }
      read_num(wj, path, "wind_speed", spec.v_w);
      cfg.wtgs.push_back(spec);
    }
  } else {
    WtgSpec spec;
    spec.params.omega_B = cfg.angular_base.wtg_omega_base();
    cfg.wtgs.push_back(spec);
  }

  if (root.contains("controller")) {
    const std::string path = origin + ".controller";
    const json& c = expect_object(root.at("controller"), path);
    reject_unknown_keys(c, path,
                        {"type", "conventional", "shaping_f", "shaping_g", "lqr", "gains"});
    if (c.contains("type")) {
      if (!c.at("type").is_string()) throw ConfigError(path + ".type must be a string");
      const std::string s = c.at("type").get<std::string>();
      const auto t = controller_type_from_string(s);
      if (!t) {
        throw ConfigError(path + ".type must be one of none, conventional, vic-i, proposed");
      }
      cfg.controller.type = *t;
    }
    if (c.contains("conventional")) {
      const json& cc = expect_object(c.at("conventional"), path + ".conventional");
      reject_unknown_keys(cc, path + ".conventional", {"k_p", "k_d", "hold_duration"});
      read_num(cc, path + ".conventional", "k_p", cfg.controller.conv.k_P_vir);
      read_num(cc, path + ".conventional", "k_d", cfg.controller.conv.k_D_vir);
      read_num(cc, path + ".conventional", "hold_duration",
               cfg.controller.conv.hold_duration);
    }
    if (c.contains("shaping_f")) {
      const json& cf = expect_object(c.at("shaping_f"), path + ".shaping_f");
      reject_unknown_keys(cf, path + ".shaping_f", {"knee_low", "knee_high"});
      read_num(cf, path + ".shaping_f", "knee_low", cfg.controller.f.knee_low);
      read_num(cf, path + ".shaping_f", "knee_high", cfg.controller.f.knee_high);
    }
    if (c.contains("shaping_g")) {
      const json& cg = expect_object(c.at("shaping_g"), path + ".shaping_g");
      reject_unknown_keys(cg, path + ".shaping_g", {"t1", "t2", "t3", "g_min"});
      read_num(cg, path + ".shaping_g", "t1", cfg.controller.g.t1);
      read_num(cg, path + ".shaping_g", "t2", cfg.controller.g.t2);
      read_num(cg, path + ".shaping_g", "t3", cfg.controller.g.t3);
      read_num(cg, path + ".shaping_g", "g_min", cfg.controller.g.g_min);
    }
    if (c.contains("lqr")) {
      const json& cl = expect_object(c.at("lqr"), path + ".lqr");
      reject_unknown_keys(cl, path + ".lqr", {"q", "alpha"});
      read_num_list(cl, path + ".lqr", "q", cfg.controller.q_diag);
      read_num(cl, path + ".lqr", "alpha", cfg.controller.alpha);
    }
    read_num_list(c, path, "gains", cfg.controller.explicit_gains);
  }

  if (root.contains("event")) {
    const json& e = expect_object(root.at("event"), origin + ".event");
    reject_unknown_keys(e, origin + ".event", {"time", "delta_p_l"});
    read_num(e, origin + ".event", "time", cfg.event.time);
    read_num(e, origin + ".event", "delta_p_l", cfg.event.delta_P_L);
  }

  if (root.contains("sim")) {
    const json& s = expect_object(root.at("sim"), origin + ".sim");
    reject_unknown_keys(s, origin + ".sim", {"t_end", "dt", "record_stride"});
    read_num(s, origin + ".sim", "t_end", cfg.sim.t_end);
    read_num(s, origin + ".sim", "dt", cfg.sim.dt);
    read_int(s, origin + ".sim", "record_stride", cfg.sim.record_stride);
  }

  if (root.contains("output")) {
    const json& o = expect_object(root.at("output"), origin + ".output");
    reject_unknown_keys(o, origin + ".output", {"plots"});
    read_bool(o, origin + ".output", "plots", cfg.output.plots);
  }

  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["name"] = cfg.name;
  j["bases"] = {{"grid_rated_mw", cfg.power_base.grid_rated_mw},
                {"wtg_rated_mw", cfg.power_base.wtg_rated_mw},
                {"grid_omega_base", cfg.angular_base.grid_omega_base},
                {"pole_pairs", cfg.angular_base.pole_pairs}};
  j["grid"] = {{"m", cfg.grid.M},
               {"d", cfg.grid.D},
               {"t_g", cfg.grid.T_g},
               {"r_droop", cfg.grid.R_droop}};
  j["wtgs"] = nlohmann::ordered_json::array();
  for (const WtgSpec& w : cfg.wtgs) {
    nlohmann::ordered_json wj;
    wj["wind_speed"] = w.v_w;
    wj["params"] = {{"h_t", w.params.H_t},
                    {"h_g", w.params.H_g},
                    {"k_sh", w.params.K_sh},
                    {"d_sh", w.params.D_sh},
                    {"omega_b", w.params.omega_B},
                    {"a_p", w.params.a_P},
                    {"k_opt", w.params.k_opt},
                    {"omega_g_min", w.params.omega_g_min},
                    {"omega_g_max", w.params.omega_g_max},
                    {"v_w1", w.params.v_w1},
                    {"lambda_opt", w.params.lambda_opt},
                    {"cp_max", w.params.cp_max}};
    j["wtgs"].push_back(wj);
  }
  nlohmann::ordered_json c;
  c["type"] = to_string(cfg.controller.type);
  c["conventional"] = {{"k_p", cfg.controller.conv.k_P_vir},
                       {"k_d", cfg.controller.conv.k_D_vir},
                       {"hold_duration", cfg.controller.conv.hold_duration}};
  c["shaping_f"] = {{"knee_low", cfg.controller.f.knee_low},
                    {"knee_high", cfg.controller.f.knee_high}};
  c["shaping_g"] = {{"t1", cfg.controller.g.t1},
                    {"t2", cfg.controller.g.t2},
                    {"t3", cfg.controller.g.t3},
                    {"g_min", cfg.controller.g.g_min}};
  if (!cfg.controller.q_diag.empty() || cfg.controller.alpha != 1.0) {
    nlohmann::ordered_json l;
    if (!cfg.controller.q_diag.empty()) l["q"] = cfg.controller.q_diag;
    l["alpha"] = cfg.controller.alpha;
    c["lqr"] = l;
  }
  if (!cfg.controller.explicit_gains.empty()) c["gains"] = cfg.controller.explicit_gains;
  j["controller"] = c;
  j["event"] = {{"time", cfg.event.time}, {"delta_p_l", cfg.event.delta_P_L}};
  j["sim"] = {{"t_end", cfg.sim.t_end},
              {"dt", cfg.sim.dt},
              {"record_stride", cfg.sim.record_stride}};
  j["output"] = {{"plots", cfg.output.plots}};
  return j.dump(2) + "\n";
}

}  // namespace vicsim
