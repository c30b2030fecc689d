#include "antmesh/antmesh_router.hpp"

#include <algorithm>

namespace antmesh {

namespace {

AntParams ant_params(const AntMeshParams& p) {
  AntParams a;
  a.ant_p0 = p.p0;
  a.data_p0 = p.p0;
  a.ant_rate_hz = p.ant_rate_hz;
  a.window = p.window;
  a.delta_p_cap = p.delta_p_cap;
  a.sources = p.ant_sources;
  return a;
}

}  // namespace

HopCost backward_hop_cost(const LinkCostModel& model, NodeId self, std::uint32_t own_queue, double bandwidth_bps,
                          const LinkEstimate* estimate, SimTime now, int channel, std::optional<int> next_channel) {
  HopCost c;
  const std::int64_t e_tx = expected_tx_time(model.pkt_bits, bandwidth_bps, 1, model.mac, model.rts_cts);
  if (!estimate || !LinkEstimationTable::fresh(*estimate, now, model.expiry)) {
    c.stale = true;
    c.lq_us = e_tx;
    c.ifld_us = e_tx;
    return c;
  }
  c.lq_us = link_quality(e_tx, own_queue);
  const auto interferers = LinkEstimationTable::interferer_queues(*estimate, self);
  c.ifld_us = inter_flow_delay(c.lq_us, interferers);
  if (next_channel) {
    c.alpha_us = intra_flow_cost(channel, *next_channel, estimate->neighbor_total_queue, model.pkt_bits,
                                 bandwidth_bps);
  }
  return c;
}

AntMeshRouter::AntMeshRouter(RouterHost& host, AntMeshParams params, LinkCostModel cost)
    : AntRouter(host, ant_params(params)),
      amparams_(params),
      cost_(cost),
      estimates_(host.topology().size()) {
  cost_.expiry = SimTime::from_us(3 * params.hello_interval.us());
}

void AntMeshRouter::start(SimTime horizon) {
  AntRouter::start(horizon);
  if (amparams_.hello_interval.us() <= 0) return;
  const auto n = static_cast<std::int64_t>(host_.topology().size());
  for (NodeId node = 0; node < host_.topology().size(); ++node) {
    const SimTime first = SimTime::from_us(amparams_.hello_interval.us() * node / n);
    host_.sim().schedule(first, EventKind::hello_timer, node, 0, [this, node, horizon] { hello_tick(node, horizon); });
  }
}

void AntMeshRouter::hello_tick(NodeId node, SimTime horizon) {
  emit_hello(node);
  const SimTime next = host_.sim().now() + amparams_.hello_interval;
  if (next <= horizon) {
    host_.sim().schedule(next, EventKind::hello_timer, node, 0, [this, node, horizon] { hello_tick(node, horizon); });
  }
}

void AntMeshRouter::emit_hello(NodeId node) {
  const SimTime now = host_.sim().now();
  const Mac& mac = host_.mac();
  for (const Radio& r : host_.topology().node(node).radios) {
    HelloPayload h;
    h.channel = r.channel;
    h.queue = mac.data_queue(node, r.channel);
    h.total_queue = mac.total_data_queue(node);
    h.neighbors = estimates_[node].advertised(r.channel, now, cost_.expiry);
    Packet p;
    p.kind = PacketKind::hsa;
    p.src = node;
    p.dst = kBroadcast;
    p.size_bits = hello_size_bits(h.neighbors.size());
    p.born_at = now;
    p.ttl = 1;
    p.id = host_.next_packet_id();
    p.payload = std::move(h);
    host_.broadcast_control(node, r.channel, std::move(p));
  }
}

double AntMeshRouter::bandwidth(NodeId from, NodeId to, int channel) const {
  const Topology& topo = host_.topology();
  if (auto l = topo.link(from, to, channel)) return l->bandwidth_bps;
  if (auto idx = topo.radio_index(from, channel)) return topo.node(from).radios[*idx].bandwidth_bps;
  return Radio{}.bandwidth_bps;
}

void AntMeshRouter::on_hello(NodeId at, NodeId from, int channel, const Packet& packet) {
  const HelloPayload& h = packet.hello();
  const std::int64_t e_tx = expected_tx_time(cost_.pkt_bits, bandwidth(at, from, channel), 1, cost_.mac,
                                             cost_.rts_cts);
  estimates_[at].on_hello(from, h, link_quality(e_tx, host_.mac().data_queue(at, channel)), host_.sim().now());
}

std::int64_t AntMeshRouter::hop_cost(const BackwardHop& hop) {
  LinkEstimate* e = estimates_[hop.self].find(hop.via, hop.channel);
  const HopCost c = backward_hop_cost(cost_, hop.self, host_.mac().data_queue(hop.self, hop.channel),
                                      bandwidth(hop.self, hop.via, hop.channel), e, host_.sim().now(), hop.channel,
                                      hop.next_channel);
  if (c.stale) {
    ++host_.ledger().stale_estimates;
  } else {
    e->lq_us = c.lq_us;
  }
  return c.itt_us();
}

void AntMeshRouter::on_topology_change(const LinkDelta& delta) {
  AntRouter::on_topology_change(delta);
  for (const Link& l : delta.vanished) {
    if (!host_.topology().is_neighbor(l.from, l.to)) estimates_[l.from].forget(l.to);
  }
}

std::optional<std::int64_t> AntMeshRouter::dump_lq(NodeId node, NodeId via) const {
  std::optional<std::int64_t> best;
  for (const auto& [key, e] : estimates_[node].entries()) {
    if (key.first == via && (!best || e.lq_us < *best)) best = e.lq_us;
  }
  return best;
}

}  // namespace antmesh
