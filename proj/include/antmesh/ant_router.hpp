#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "antmesh/estimation.hpp"
#include "antmesh/pheromone.hpp"
#include "antmesh/router.hpp"

namespace antmesh {

/// Which nodes originate forward ants. `flows`: sources of currently active
/// flows only. `all`: every node; nodes without an active flow aim at a
/// random gateway.
enum class AntSources : std::uint8_t { flows, all };

std::string_view to_string(AntSources s);
std::optional<AntSources> parse_ant_sources(std::string_view s);

struct AntParams {
  double ant_p0 = 0.8;   // transition rule used by forward ants
  double data_p0 = 0.8;  // transition rule used by data packets
  double ant_rate_hz = 40.0;
  std::size_t window = 10;
  double delta_p_cap = 1.0;
  AntSources sources = AntSources::flows;
};

struct BackwardUpdate {
  double mean_before = 0.0;
  double dp = 0.0;
  bool applied = false;
};

/// Delay-table and pheromone update for one backward ant at one node: the
/// reinforcement compares `trip` with the window mean seen so far (the trip
/// itself when the window is empty), then the trip joins the window.
BackwardUpdate apply_backward(PheromoneTable& table, DelayTable& delays, NodeId dst, NodeId via, double trip,
                              double cap);

/// Forward/backward ant machinery shared by the pheromone-based routers.
///
/// A forward ant records (node, channel) for every hop it takes; the
/// backward ant retraces those hops in reverse. At each node on the way
/// back, hop_cost() prices the recorded hop and the accumulated trip drives
/// apply_backward().
class AntRouter : public Router {
 public:
  AntRouter(RouterHost& host, AntParams params);

  void start(SimTime horizon) override;
  std::optional<NodeId> route_data(NodeId at, const Packet& packet) override;
  void on_control(NodeId at, NodeId from, int channel, Packet packet) override;
  void on_topology_change(const LinkDelta& delta) override;
  void dump_tables(std::ostream& out, SimTime now) const override;

  const AntParams& params() const { return params_; }
  const PheromoneTable& table(NodeId n) const { return tables_.at(n); }
  PheromoneTable& table(NodeId n) { return tables_.at(n); }
  const DelayTable& delays(NodeId n) const { return delays_.at(n); }

  /// Launch one forward ant from `src` toward `dst` now.
  void launch(NodeId src, NodeId dst);

 protected:
  struct BackwardHop {
    NodeId self = 0;
    NodeId via = 0;
    int channel = 0;
    std::optional<int> next_channel;  // channel of the hop after `via`, if any
  };

  /// Trip increment charged for the hop self -> via.
  virtual std::int64_t hop_cost(const BackwardHop& hop) = 0;
  virtual void on_hello(NodeId, NodeId, int, const Packet&) {}
  /// Link quality shown in table dumps.
  virtual std::optional<std::int64_t> dump_lq(NodeId, NodeId) const { return std::nullopt; }

  RouterHost& host_;

 private:
  void ant_tick(NodeId node, SimTime period, SimTime horizon);
  std::optional<NodeId> pick_destination(NodeId node);
  void forward_ant(NodeId at, Packet packet);
  void spawn_backward(NodeId at, Packet forward);
  void backward_ant(NodeId at, Packet packet);
  void send_backward(NodeId at, Packet packet);
  void kill(const Packet& ant);

  AntParams params_;
  std::vector<PheromoneTable> tables_;
  std::vector<DelayTable> delays_;
};

}  // namespace antmesh
