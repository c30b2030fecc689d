#pragma once

#include <optional>
#include <vector>

#include "antmesh/ant_router.hpp"
#include "antmesh/estimation.hpp"
#include "antmesh/mac.hpp"

namespace antmesh {

struct AntMeshParams {
  double p0 = 0.8;
  double ant_rate_hz = 40.0;
  SimTime hello_interval = SimTime::from_us(1'000'000);
  std::size_t window = 10;
  double delta_p_cap = 1.0;
  AntSources ant_sources = AntSources::flows;
  bool operator==(const AntMeshParams&) const = default;
};

/// Inputs for pricing one hop of a backward ant.
struct LinkCostModel {
  MacConstants mac;
  bool rts_cts = true;
  std::uint32_t pkt_bits = 4096;
  SimTime expiry = SimTime::from_us(3'000'000);
};

struct HopCost {
  std::int64_t lq_us = 0;
  std::int64_t ifld_us = 0;
  std::int64_t alpha_us = 0;
  bool stale = false;
  std::int64_t itt_us() const { return ifld_us + alpha_us; }
};

/// Cost of the hop self -> estimate.neighbor on `channel`.
///
/// LQ uses self's own data queue on the channel; the interferer set is the
/// far end's queue plus the queues it advertised for its other neighbors on
/// that channel. The intra-flow term applies when the following hop reuses
/// the channel and is priced with the far end's total queue. A missing or
/// expired estimate degrades to one idle transmission time.
HopCost backward_hop_cost(const LinkCostModel& model, NodeId self, std::uint32_t own_queue, double bandwidth_bps,
                          const LinkEstimate* estimate, SimTime now, int channel, std::optional<int> next_channel);

class AntMeshRouter : public AntRouter {
 public:
  AntMeshRouter(RouterHost& host, AntMeshParams params, LinkCostModel cost);

  std::string_view name() const override { return "antmesh"; }
  void start(SimTime horizon) override;
  void on_topology_change(const LinkDelta& delta) override;

  const LinkEstimationTable& estimates(NodeId n) const { return estimates_.at(n); }
  /// Broadcast one hello on every radio of `node` now.
  void emit_hello(NodeId node);

 protected:
  std::int64_t hop_cost(const BackwardHop& hop) override;
  void on_hello(NodeId at, NodeId from, int channel, const Packet& packet) override;
  std::optional<std::int64_t> dump_lq(NodeId node, NodeId via) const override;

 private:
  void hello_tick(NodeId node, SimTime horizon);
  double bandwidth(NodeId from, NodeId to, int channel) const;

  AntMeshParams amparams_;
  LinkCostModel cost_;
  std::vector<LinkEstimationTable> estimates_;
};

}  // namespace antmesh
