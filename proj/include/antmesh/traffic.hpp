#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "antmesh/rng.hpp"
#include "antmesh/sim_time.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

/// Constant-bit-rate flow. A missing dst means "pick a random gateway".
struct FlowSpec {
  std::string id;
  NodeId src = 0;
  std::optional<NodeId> dst;
  double rate_pps = 10.0;
  SimTime start{};
  std::optional<SimTime> stop;  // runs to the horizon when absent
  std::uint32_t pkt_bits = 4096;
  bool operator==(const FlowSpec&) const = default;
};

struct LoadAction {
  SimTime at{};
  bool add = true;
  std::vector<std::string> flows;
  bool operator==(const LoadAction&) const = default;
};

using LoadScript = std::vector<LoadAction>;

class TrafficError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ResolvedFlow {
  std::size_t index = 0;
  std::string id;
  NodeId src = 0;
  NodeId dst = 0;
  double rate_pps = 0.0;
  SimTime start{};
  SimTime stop{};
  std::uint32_t pkt_bits = 4096;
};

struct TrafficPlan {
  std::vector<ResolvedFlow> flows;
  /// Times at which the load script changes the active flow set.
  std::vector<SimTime> change_points;
};

/// Apply the load script to the declared flows: `add` sets a flow's start,
/// `remove` sets its stop. Random-gateway destinations are drawn from `rng`
/// in flow order. Throws TrafficError on duplicate or unknown ids, bad rates
/// or a stop that is not after the start.
TrafficPlan apply_load_script(const std::vector<FlowSpec>& flows, const LoadScript& script,
                              const std::vector<NodeId>& gateways, SimTime horizon, RngStream& rng);

/// Time of the k-th injection of a flow, phase-shifted by its index.
SimTime injection_time(const ResolvedFlow& flow, std::uint64_t k, std::size_t flow_count);

/// Number of injections the flow performs in [flow.start, flow.stop).
std::uint64_t injection_count(const ResolvedFlow& flow, std::size_t flow_count);

}  // namespace antmesh
