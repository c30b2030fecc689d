#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "antmesh/mac.hpp"
#include "antmesh/metrics.hpp"
#include "antmesh/packet.hpp"
#include "antmesh/rng.hpp"
#include "antmesh/simulator.hpp"
#include "antmesh/topology.hpp"
#include "antmesh/traffic.hpp"

namespace antmesh {

/// What a routing agent may use from the surrounding network.
class RouterHost {
 public:
  virtual ~RouterHost() = default;

  virtual Simulator& sim() = 0;
  virtual const Topology& topology() const = 0;
  virtual const Mac& mac() const = 0;
  virtual RngStream& ant_rng() = 0;
  virtual MetricsLedger& ledger() = 0;
  virtual std::uint64_t next_packet_id() = 0;
  virtual int ttl() const = 0;

  /// Channel for a unicast at -> next. Among shared channels prefer one
  /// different from `arrival_channel`, then the shorter local queue (both lanes),
  /// then the lower channel number.
  virtual std::optional<int> pick_channel(NodeId at, NodeId next, int arrival_channel) const = 0;
  /// Queue a control packet for a neighbor on `channel`.
  virtual void send_control(NodeId at, NodeId next, int channel, Packet packet) = 0;
  virtual void broadcast_control(NodeId at, int channel, Packet packet) = 0;

  virtual std::span<const ResolvedFlow> flows() const = 0;
  virtual bool flow_active(std::size_t flow) const = 0;
};

/// Per-node routing agent for one algorithm.
class Router {
 public:
  virtual ~Router() = default;

  virtual std::string_view name() const = 0;
  /// Called once before the simulation runs; schedules periodic work.
  virtual void start(SimTime horizon) = 0;
  /// Next hop for a data packet at `at` (never `at` itself); nullopt drops
  /// the packet as no-route.
  virtual std::optional<NodeId> route_data(NodeId at, const Packet& packet) = 0;
  /// A control packet addressed to `at` (or broadcast) has arrived.
  virtual void on_control(NodeId at, NodeId from, int channel, Packet packet) = 0;
  virtual void on_topology_change(const LinkDelta& delta) = 0;
  /// One line per table entry; empty for routers without tables.
  virtual void dump_tables(std::ostream& out, SimTime now) const = 0;
};

}  // namespace antmesh
