#pragma once

#include <string>

#include "vicsim/engine.hpp"

namespace vicsim {

// Strict JSON scenario parsing: unknown keys anywhere are a ConfigError that
// names them; omitted keys fall back to the built-in defaults.
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& origin = "scenario");

ScenarioConfig load_scenario_file(const std::string& path);

std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace vicsim
