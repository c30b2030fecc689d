#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antmesh/antmesh_router.hpp"
#include "antmesh/mac.hpp"
#include "antmesh/topology.hpp"
#include "antmesh/traffic.hpp"

namespace antmesh {

enum class RoutingAlgorithm : std::uint8_t { antmesh, static_min_hop, hopant };

std::string_view to_string(RoutingAlgorithm a);
std::optional<RoutingAlgorithm> parse_routing(std::string_view s);

struct TopologySpec {
  TopologyParams params;
  double bandwidth_bps = 2'000'000.0;  // applied to every radio
  std::vector<NodeConfig> nodes;
  bool operator==(const TopologySpec&) const = default;
};

struct RoutingSpec {
  RoutingAlgorithm algorithm = RoutingAlgorithm::antmesh;
  AntMeshParams params;
  bool operator==(const RoutingSpec&) const = default;
};

struct MobilitySpec {
  double speed_mps = 0.0;
  double mobile_fraction = 0.0;
  double pause_s = 0.0;
  SimTime tick = SimTime::from_us(100'000);
  bool operator==(const MobilitySpec&) const = default;
};

struct RunSpec {
  SimTime horizon = SimTime::from_us(30'000'000);
  std::vector<std::uint64_t> seeds{1};
  SimTime warmup = SimTime::from_us(5'000'000);
  SimTime sample_interval = SimTime::from_us(500'000);
  double learning_epsilon = 0.10;
  int settle_windows = 3;
  std::vector<SimTime> dump_at;
  bool operator==(const RunSpec&) const = default;
};

/// One sweep axis: a scenario key and the values it takes.
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
  bool operator==(const SweepAxis&) const = default;
};

struct Scenario {
  std::string name = "default";
  TopologySpec topology;
  MacConfig mac;
  RoutingSpec routing;
  std::vector<FlowSpec> flows;
  LoadScript load;
  MobilitySpec mobility;
  RunSpec run;
  std::vector<SweepAxis> sweep;
  bool operator==(const Scenario&) const = default;
};

/// Invalid scenario text or values. `line` is 0 when the problem is not
/// tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parse the sectioned key = value format. Omitted keys keep their
/// defaults; `preset = name` before any section starts from that preset.
Scenario parse_scenario(std::string_view text);
/// Fully explicit text that parses back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);
/// Cross-field checks; throws ConfigError.
void validate(const Scenario& s);

/// Set one `section.key` (or sweep alias such as `p0`, `flow_rate`,
/// `speed`, `routing`) from text. Throws ConfigError on unknown keys or
/// bad values.
void apply_setting(Scenario& s, std::string_view key, std::string_view value);

/// Parse "a..b" or "a,b,c" into seeds.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Summary of the flow set for CSV output, e.g. "4@120".
std::string flow_summary(const Scenario& s);

}  // namespace antmesh
