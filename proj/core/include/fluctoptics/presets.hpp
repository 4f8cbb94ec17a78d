#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluctoptics/scenario.hpp"

// Built-in scenarios. Each is a complete, valid Scenario; `fluctoptics
// presets` lists them and --preset NAME runs one without a config file.

namespace fluctoptics::scenario {

struct Preset {
    std::string name;
    std::string description;
    Scenario config;
};

const std::vector<Preset>& presets();
std::optional<Scenario> find_preset(const std::string& name);

}  // namespace fluctoptics::scenario
