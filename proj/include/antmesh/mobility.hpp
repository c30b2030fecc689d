#pragma once

#include <vector>

#include "antmesh/rng.hpp"
#include "antmesh/sim_time.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

struct WaypointState {
  Position target;
  double speed_mps = 0.0;
  SimTime pause_until{};
};

struct MobilityParams {
  double speed_mps = 0.0;
  double pause_s = 0.0;
  SimTime tick = SimTime::from_us(100'000);
};

/// Random waypoint motion for the mobile subset of a topology.
class RandomWaypoint {
 public:
  /// Draws an initial target for every mobile node from `rng`.
  RandomWaypoint(MobilityParams params, std::vector<bool> mobile, const Topology& topo, RngStream& rng);

  /// Advance mobile nodes by one tick ending at `now` and rebuild links.
  LinkDelta tick(SimTime now, Topology& topo, RngStream& rng);

  const MobilityParams& params() const { return params_; }
  bool is_mobile(NodeId id) const { return mobile_.at(id); }
  const WaypointState& state(NodeId id) const { return states_.at(id); }

 private:
  Position draw_target(const Topology& topo, RngStream& rng) const;

  MobilityParams params_;
  std::vector<bool> mobile_;
  std::vector<WaypointState> states_;
};

}  // namespace antmesh
