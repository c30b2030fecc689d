#include "antmesh/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "antmesh/antmesh_router.hpp"
#include "antmesh/baselines.hpp"

namespace antmesh {

namespace {

std::unique_ptr<Router> make_router(const Scenario& s, RouterHost& host) {
  const AntMeshParams& p = s.routing.params;
  switch (s.routing.algorithm) {
    case RoutingAlgorithm::antmesh: {
      LinkCostModel cost;
      cost.mac = s.mac.constants;
      cost.rts_cts = s.mac.use_rts_cts_overhead;
      if (!s.flows.empty()) cost.pkt_bits = s.flows.front().pkt_bits;
      return std::make_unique<AntMeshRouter>(host, p, cost);
    }
    case RoutingAlgorithm::hopant: {
      HopAntParams h;
      h.ant_p0 = p.p0;
      h.ant_rate_hz = p.ant_rate_hz;
      h.window = p.window;
      h.delta_p_cap = p.delta_p_cap;
      h.ant_sources = p.ant_sources;
      return std::make_unique<HopAntRouter>(host, h);
    }
    case RoutingAlgorithm::static_min_hop:
      return std::make_unique<StaticRouter>(host);
  }
  return nullptr;
}

}  // namespace

Network::Network(const Scenario& scenario, std::uint64_t seed, RunOptions options)
    : scenario_(scenario),
      seed_(seed),
      options_(options),
      topo_(scenario.topology.params, scenario.topology.nodes),
      ant_rng_(seed, kAntStream),
      traffic_rng_(seed, kTrafficStream),
      mobility_rng_(seed, kMobilityStream),
      loss_rng_(seed, kLossStream) {
  const RunSpec& run = scenario_.run;
  sim_.set_trace(options_.trace);
  ledger_.measure_start = std::min(run.warmup, run.horizon);
  ledger_.measure_end = run.horizon;

  plan_ = apply_load_script(scenario_.flows, scenario_.load, topo_.gateways(), run.horizon, traffic_rng_);
  for (const ResolvedFlow& f : plan_.flows) {
    if (f.src >= topo_.size() || f.dst >= topo_.size()) {
      throw TrafficError("flow '" + f.id + "' names a node outside the topology");
    }
  }
  active_.assign(plan_.flows.size(), false);
  ledger_.flow_delivered_bits.assign(plan_.flows.size(), 0);
  for (std::size_t i = 0; i < plan_.change_points.size(); ++i) {
    LearningTimeProbe probe;
    probe.change_point = plan_.change_points[i];
    probe.interval_end = i + 1 < plan_.change_points.size() ? plan_.change_points[i + 1] : run.horizon;
    probe.window = run.sample_interval;
    probe.epsilon = run.learning_epsilon;
    probe.settle_windows = run.settle_windows;
    ledger_.probes.push_back(probe);
  }
  link_tx_.assign(topo_.size() * topo_.size(), 0);

  Mac::Hooks hooks;
  hooks.deliver = [this](NodeId to, NodeId from, int channel, Packet p) { on_receive(to, from, channel, std::move(p)); };
  hooks.drop = [this](NodeId at, const Packet& p, DropCause cause) { on_drop(at, p, cause); };
  hooks.tx_start = [this](NodeId at, NodeId next, int, const Packet& p, SimTime) { on_tx_start(at, next, p); };
  mac_ = std::make_unique<Mac>(scenario_.mac, sim_, topo_, loss_rng_, std::move(hooks));
  router_ = make_router(scenario_, *this);

  const MobilitySpec& m = scenario_.mobility;
  if (m.speed_mps > 0.0 && m.mobile_fraction > 0.0) {
    const auto n = topo_.size();
    const auto count = static_cast<std::size_t>(std::llround(m.mobile_fraction * static_cast<double>(n)));
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    // Partial Fisher-Yates: the first `count` entries are the mobile set.
    for (std::size_t i = 0; i < std::min(count, n); ++i) {
      std::swap(order[i], order[i + mobility_rng_.index(n - i)]);
    }
    std::vector<bool> mobile(n, false);
    for (std::size_t i = 0; i < std::min(count, n); ++i) mobile[order[i]] = true;
    MobilityParams mp;
    mp.speed_mps = m.speed_mps;
    mp.pause_s = m.pause_s;
    mp.tick = m.tick;
    mobility_ = std::make_unique<RandomWaypoint>(mp, std::move(mobile), topo_, mobility_rng_);
  }
}

Network::~Network() = default;

bool Network::measured(const Packet& p) const {
  return p.born_at >= ledger_.measure_start && p.born_at < ledger_.measure_end;
}

std::optional<int> Network::pick_channel(NodeId at, NodeId next, int arrival_channel) const {
  std::optional<int> best;
  std::tuple<bool, std::size_t, int> best_key{};
  for (int ch : topo_.shared_channels(at, next)) {
    const std::size_t backlog = mac_->data_queue(at, ch) + mac_->control_queue(at, ch);
    const std::tuple<bool, std::size_t, int> key{ch == arrival_channel, backlog, ch};
    if (!best || key < best_key) {
      best = ch;
      best_key = key;
    }
  }
  return best;
}

void Network::send_control(NodeId at, NodeId next, int channel, Packet packet) {
  mac_->enqueue(at, channel, next, std::move(packet));
}

void Network::broadcast_control(NodeId at, int channel, Packet packet) { mac_->broadcast(at, channel, std::move(packet)); }

std::uint64_t Network::data_tx(NodeId from, NodeId to) const { return link_tx_.at(from * topo_.size() + to); }

MetricsLedger Network::run() {
  const SimTime horizon = scenario_.run.horizon;
  router_->start(horizon);
  for (const ResolvedFlow& f : plan_.flows) {
    const std::size_t i = f.index;
    if (f.start < horizon) {
      sim_.schedule(f.start, EventKind::flow_start, f.src, static_cast<std::int64_t>(i), [this, i] {
        active_[i] = true;
        inject(i, 0);
      });
    }
    if (f.stop < horizon) {
      sim_.schedule(f.stop, EventKind::flow_stop, f.src, static_cast<std::int64_t>(i), [this, i] { active_[i] = false; });
    }
  }
  if (mobility_) {
    sim_.schedule(scenario_.mobility.tick, EventKind::mobility_tick, 0, 0, [this] { mobility_tick(); });
  }
  if (options_.table_dump) {
    for (SimTime t : scenario_.run.dump_at) {
      if (t > horizon) continue;
      sim_.schedule(t, EventKind::metrics_sample, 0, 0, [this] { router_->dump_tables(*options_.table_dump, sim_.now()); });
    }
  }
  sim_.run_until(horizon);
  finalize();
  return ledger_;
}

void Network::inject(std::size_t flow, std::uint64_t k) {
  const ResolvedFlow& f = plan_.flows[flow];
  if (!active_[flow]) return;
  Packet p;
  p.kind = PacketKind::data;
  p.src = f.src;
  p.dst = f.dst;
  p.size_bits = f.pkt_bits;
  p.born_at = sim_.now();
  p.ttl = scenario_.mac.ttl;
  p.id = next_packet_id();
  p.flow = static_cast<int>(flow);
  if (measured(p)) ++ledger_.data_sent;

  const SimTime next = injection_time(f, k + 1, plan_.flows.size());
  if (next < f.stop && next < scenario_.run.horizon) {
    // Application injections are packet arrivals at the source.
    sim_.schedule(next, EventKind::packet_arrival, f.src, static_cast<std::int64_t>(flow), [this, flow, k] {
      inject(flow, k + 1);
    });
  }
  forward_data(f.src, std::move(p));
}

void Network::forward_data(NodeId at, Packet packet) {
  const auto next = router_->route_data(at, packet);
  if (!next) return on_drop(at, packet, DropCause::no_route);
  const auto channel = pick_channel(at, *next, packet.arrival_channel);
  if (!channel) return on_drop(at, packet, DropCause::no_route);
  mac_->enqueue(at, *channel, *next, std::move(packet));
}

void Network::on_receive(NodeId to, NodeId from, int channel, Packet packet) {
  if (packet.is_control()) return router_->on_control(to, from, channel, std::move(packet));
  if (to == packet.dst) {
    const std::int64_t delay = (sim_.now() - packet.born_at).us();
    ledger_.delay_samples.push_back({sim_.now(), delay});
    if (measured(packet)) {
      ++ledger_.data_delivered;
      ledger_.delivered_bits += packet.size_bits;
      ledger_.flow_delivered_bits[static_cast<std::size_t>(packet.flow)] += packet.size_bits;
      ledger_.measured_delays.push_back({sim_.now(), delay});
    }
    return;
  }
  if (packet.ttl <= 0) return on_drop(to, packet, DropCause::ttl_expired);
  --packet.ttl;
  forward_data(to, std::move(packet));
}

void Network::on_drop(NodeId, const Packet& packet, DropCause cause) {
  if (packet.is_control()) {
    if (packet.kind != PacketKind::hsa) ++ledger_.ants_died;
    return;
  }
  if (measured(packet)) ledger_.record_loss(cause);
}

void Network::on_tx_start(NodeId at, NodeId next_hop, const Packet& packet) {
  if (!packet.is_control()) {
    if (measured(packet) && next_hop != kBroadcast) ++link_tx_[at * topo_.size() + next_hop];
    return;
  }
  if (sim_.now() < ledger_.measure_start) return;
  ++ledger_.control_tx_hops;
  switch (packet.kind) {
    case PacketKind::fsa: ++ledger_.fsa_tx; break;
    case PacketKind::bsa: ++ledger_.bsa_tx; break;
    case PacketKind::hsa: ++ledger_.hsa_tx; break;
    case PacketKind::data: break;
  }
}

void Network::mobility_tick() {
  const LinkDelta delta = mobility_->tick(sim_.now(), topo_, mobility_rng_);
  if (!delta.empty()) router_->on_topology_change(delta);
  const SimTime next = sim_.now() + scenario_.mobility.tick;
  if (next <= scenario_.run.horizon) {
    sim_.schedule(next, EventKind::mobility_tick, 0, 0, [this] { mobility_tick(); });
  }
}

void Network::finalize() {
  const std::uint64_t accounted = ledger_.data_delivered + ledger_.total_loss();
  ledger_.loss[static_cast<std::size_t>(DropCause::horizon_cut)] =
      ledger_.data_sent > accounted ? ledger_.data_sent - accounted : 0;
}

}  // namespace antmesh
