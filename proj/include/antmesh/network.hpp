#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "antmesh/mac.hpp"
#include "antmesh/metrics.hpp"
#include "antmesh/mobility.hpp"
#include "antmesh/router.hpp"
#include "antmesh/scenario.hpp"
#include "antmesh/simulator.hpp"
#include "antmesh/topology.hpp"
#include "antmesh/traffic.hpp"

namespace antmesh {

struct RunOptions {
  std::ostream* trace = nullptr;
  std::ostream* table_dump = nullptr;
};

/// One simulation run: topology, MAC, routing agent, traffic and metrics
/// wired together for a single seed.
class Network final : public RouterHost {
 public:
  Network(const Scenario& scenario, std::uint64_t seed, RunOptions options = {});
  ~Network() override;
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  /// Run to the horizon and return the finished ledger.
  MetricsLedger run();

  Simulator& sim() override { return sim_; }
  const Topology& topology() const override { return topo_; }
  const Mac& mac() const override { return *mac_; }
  RngStream& ant_rng() override { return ant_rng_; }
  MetricsLedger& ledger() override { return ledger_; }
  std::uint64_t next_packet_id() override { return next_id_++; }
  int ttl() const override { return scenario_.mac.ttl; }
  std::optional<int> pick_channel(NodeId at, NodeId next, int arrival_channel) const override;
  void send_control(NodeId at, NodeId next, int channel, Packet packet) override;
  void broadcast_control(NodeId at, int channel, Packet packet) override;
  std::span<const ResolvedFlow> flows() const override { return plan_.flows; }
  bool flow_active(std::size_t flow) const override { return active_.at(flow); }

  Router& router() { return *router_; }
  Topology& mutable_topology() { return topo_; }
  const TrafficPlan& plan() const { return plan_; }
  /// Data transmissions per directed (from, to) pair, measured packets only.
  std::uint64_t data_tx(NodeId from, NodeId to) const;

 private:
  bool measured(const Packet& p) const;
  void inject(std::size_t flow, std::uint64_t k);
  void forward_data(NodeId at, Packet packet);
  void on_receive(NodeId to, NodeId from, int channel, Packet packet);
  void on_drop(NodeId at, const Packet& packet, DropCause cause);
  void on_tx_start(NodeId at, NodeId next_hop, const Packet& packet);
  void mobility_tick();
  void finalize();

  Scenario scenario_;
  std::uint64_t seed_;
  RunOptions options_;
  Simulator sim_;
  Topology topo_;
  RngStream ant_rng_;
  RngStream traffic_rng_;
  RngStream mobility_rng_;
  RngStream loss_rng_;
  MetricsLedger ledger_;
  TrafficPlan plan_;
  std::vector<bool> active_;
  std::unique_ptr<Mac> mac_;
  std::unique_ptr<Router> router_;
  std::unique_ptr<RandomWaypoint> mobility_;
  std::uint64_t next_id_ = 0;
  std::vector<std::uint64_t> link_tx_;
};

}  // namespace antmesh
