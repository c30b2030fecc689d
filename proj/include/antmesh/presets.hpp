#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antmesh/scenario.hpp"

namespace antmesh {

struct PresetInfo {
  std::string_view name;
  std::string_view description;
};

const std::vector<PresetInfo>& preset_list();

/// Topology presets: grid15, semirandom20, random100.
std::optional<TopologySpec> topology_preset(std::string_view name);
/// Full scenario presets (also accepts the topology preset names, which
/// expand to a default scenario on that topology).
std::optional<Scenario> scenario_preset(std::string_view name);

}  // namespace antmesh
