#pragma once

#include <optional>
#include <vector>

#include "antmesh/ant_router.hpp"
#include "antmesh/router.hpp"

namespace antmesh {

/// Next hop toward `dst` on a minimum-hop path, lowest id among equals.
/// nullopt when dst is unreachable or equal to `from`.
std::optional<NodeId> min_hop_next(const Topology& topo, NodeId from, NodeId dst);

/// Hop distances to `dst` by breadth-first search; -1 when unreachable.
std::vector<int> hop_distances(const Topology& topo, NodeId dst);

/// Min-hop routing with no control traffic. Tables are rebuilt lazily
/// whenever the topology version changes.
class StaticRouter : public Router {
 public:
  explicit StaticRouter(RouterHost& host) : host_(host) {}

  std::string_view name() const override { return "static"; }
  void start(SimTime) override {}
  std::optional<NodeId> route_data(NodeId at, const Packet& packet) override;
  void on_control(NodeId, NodeId, int, Packet) override {}
  void on_topology_change(const LinkDelta&) override {}
  void dump_tables(std::ostream& out, SimTime now) const override;

 private:
  RouterHost& host_;
  std::uint64_t version_ = UINT64_MAX;
  // next_[dst][node]; computed per destination on first use
  std::vector<std::vector<std::optional<NodeId>>> next_;
  std::vector<bool> ready_;
};

struct HopAntParams {
  double ant_p0 = 0.8;
  double ant_rate_hz = 40.0;
  std::size_t window = 10;
  double delta_p_cap = 1.0;
  AntSources ant_sources = AntSources::flows;
};

/// Pheromone routing reinforced by hop count only: a backward ant with h
/// hops to go gives dp = min(cap, mean_hops / (2h)). Data follows the argmax.
class HopAntRouter : public AntRouter {
 public:
  HopAntRouter(RouterHost& host, HopAntParams params);

  std::string_view name() const override { return "hopant"; }

 protected:
  std::int64_t hop_cost(const BackwardHop&) override { return 1; }
};

}  // namespace antmesh
