#ifndef RSW_CONFIG_HPP_
#define RSW_CONFIG_HPP_

#include <string>

#include "rsw/scenarios.hpp"

namespace rsw {

// Flat key-value scenario files with [section] headers and '#' comments.
// Unknown keys are rejected so typos surface as errors naming the field.

ScenarioConfig parse_scenario_config(const std::string& text);
ScenarioConfig load_scenario_config(const std::string& path);
std::string serialize_scenario_config(const ScenarioConfig& config);
void save_scenario_config(const ScenarioConfig& config, const std::string& path);

}  // namespace rsw

#endif  // RSW_CONFIG_HPP_
