#include "antmesh/ant_router.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace antmesh {

std::string_view to_string(AntSources s) { return s == AntSources::all ? "all" : "flows"; }

std::optional<AntSources> parse_ant_sources(std::string_view s) {
  if (s == "flows") return AntSources::flows;
  if (s == "all") return AntSources::all;
  return std::nullopt;
}

BackwardUpdate apply_backward(PheromoneTable& table, DelayTable& delays, NodeId dst, NodeId via, double trip,
                              double cap) {
  BackwardUpdate u;
  u.mean_before = delays.mean(dst).value_or(trip);
  u.dp = reinforcement(u.mean_before, trip, cap);
  delays.push(dst, trip);
  u.applied = table.reinforce(dst, via, u.dp);
  return u;
}

AntRouter::AntRouter(RouterHost& host, AntParams params)
    : host_(host), params_(params), delays_(host.topology().size(), DelayTable(params.window)) {
  const Topology& topo = host_.topology();
  tables_.reserve(topo.size());
  for (NodeId n = 0; n < topo.size(); ++n) tables_.emplace_back(topo.neighbor_nodes(n));
}

void AntRouter::start(SimTime horizon) {
  if (!(params_.ant_rate_hz > 0.0)) return;
  const auto n = host_.topology().size();
  std::vector<bool> source(n, params_.sources == AntSources::all);
  for (const ResolvedFlow& f : host_.flows()) source[f.src] = true;
  const SimTime period = SimTime::from_us(std::max<std::int64_t>(1, std::llround(1e6 / params_.ant_rate_hz)));
  for (NodeId node = 0; node < n; ++node) {
    if (!source[node]) continue;
    const SimTime first = SimTime::from_us(period.us() * node / static_cast<std::int64_t>(n));
    host_.sim().schedule(first, EventKind::ant_timer, node, 0, [this, node, period, horizon] {
      ant_tick(node, period, horizon);
    });
  }
}

void AntRouter::ant_tick(NodeId node, SimTime period, SimTime horizon) {
  if (auto dst = pick_destination(node)) launch(node, *dst);
  const SimTime next = host_.sim().now() + period;
  if (next <= horizon) {
    host_.sim().schedule(next, EventKind::ant_timer, node, 0, [this, node, period, horizon] {
      ant_tick(node, period, horizon);
    });
  }
}

std::optional<NodeId> AntRouter::pick_destination(NodeId node) {
  std::vector<NodeId> dsts;
  const auto flows = host_.flows();
  for (const ResolvedFlow& f : flows) {
    if (f.src == node && host_.flow_active(f.index)) dsts.push_back(f.dst);
  }
  if (dsts.empty() && params_.sources == AntSources::all) {
    for (NodeId g : host_.topology().gateways()) {
      if (g != node) dsts.push_back(g);
    }
  }
  if (dsts.empty()) return std::nullopt;
  return dsts[host_.ant_rng().index(dsts.size())];
}

void AntRouter::launch(NodeId src, NodeId dst) {
  Packet p;
  p.kind = PacketKind::fsa;
  p.src = src;
  p.dst = dst;
  p.size_bits = ant_size_bits(0);
  p.born_at = host_.sim().now();
  p.ttl = host_.ttl();
  p.id = host_.next_packet_id();
  SmartAnt ant;
  ant.src = src;
  ant.dst = dst;
  ant.visited.push_back(src);
  p.payload = std::move(ant);
  ++host_.ledger().ants_launched;
  tables_[src].ensure_destination(dst);
  forward_ant(src, std::move(p));
}

void AntRouter::kill(const Packet&) { ++host_.ledger().ants_died; }

void AntRouter::forward_ant(NodeId at, Packet packet) {
  SmartAnt& ant = packet.ant();
  const auto next = next_hop(tables_[at], ant.dst, ant.visited, params_.ant_p0, host_.ant_rng());
  if (!next) return kill(packet);
  const auto channel = host_.pick_channel(at, *next, packet.arrival_channel);
  if (!channel) return kill(packet);
  ant.hops.push_back({at, *channel});
  packet.size_bits = ant_size_bits(ant.hops.size());
  host_.send_control(at, *next, *channel, std::move(packet));
}

void AntRouter::spawn_backward(NodeId at, Packet forward) {
  SmartAnt ant = std::move(forward.ant());
  if (ant.hops.empty()) return kill(forward);
  Packet b;
  b.kind = PacketKind::bsa;
  b.src = at;
  b.dst = ant.src;
  b.size_bits = ant_size_bits(ant.hops.size());
  b.born_at = host_.sim().now();
  b.ttl = host_.ttl();
  b.id = host_.next_packet_id();
  ant.cursor = ant.hops.size() - 1;
  ant.trip_us = 0;
  b.payload = std::move(ant);
  send_backward(at, std::move(b));
}

void AntRouter::send_backward(NodeId at, Packet packet) {
  const Hop& hop = packet.ant().hops[packet.ant().cursor];
  std::optional<int> channel;
  if (host_.topology().has_link(at, hop.node, hop.channel)) {
    channel = hop.channel;
  } else {
    channel = host_.pick_channel(at, hop.node, -1);
  }
  if (!channel) return kill(packet);
  host_.send_control(at, hop.node, *channel, std::move(packet));
}

void AntRouter::backward_ant(NodeId at, Packet packet) {
  SmartAnt& ant = packet.ant();
  const std::size_t i = ant.cursor;
  BackwardHop hop;
  hop.self = at;
  hop.channel = ant.hops[i].channel;
  if (i + 1 < ant.hops.size()) {
    hop.via = ant.hops[i + 1].node;
    hop.next_channel = ant.hops[i + 1].channel;
  } else {
    hop.via = ant.dst;
  }
  ant.trip_us += hop_cost(hop);
  apply_backward(tables_[at], delays_[at], ant.dst, hop.via, static_cast<double>(ant.trip_us),
                 params_.delta_p_cap);
  if (i == 0) {
    ++host_.ledger().ants_completed;
    return;
  }
  ant.cursor = i - 1;
  send_backward(at, std::move(packet));
}

void AntRouter::on_control(NodeId at, NodeId from, int channel, Packet packet) {
  switch (packet.kind) {
    case PacketKind::fsa: {
      if (at == packet.dst) return spawn_backward(at, std::move(packet));
      if (packet.ttl <= 0) return kill(packet);
      --packet.ttl;
      packet.ant().visited.push_back(at);
      tables_[at].ensure_destination(packet.dst);
      return forward_ant(at, std::move(packet));
    }
    case PacketKind::bsa:
      if (packet.ant().hops[packet.ant().cursor].node != at) return kill(packet);
      return backward_ant(at, std::move(packet));
    case PacketKind::hsa:
      return on_hello(at, from, channel, packet);
    case PacketKind::data:
      return;
  }
}

std::optional<NodeId> AntRouter::route_data(NodeId at, const Packet& packet) {
  PheromoneTable& t = tables_[at];
  t.ensure_destination(packet.dst);
  const NodeId exclude[] = {packet.prev_hop};
  return next_hop(t, packet.dst, exclude, params_.data_p0, host_.ant_rng());
}

void AntRouter::on_topology_change(const LinkDelta& delta) {
  std::vector<NodeId> touched;
  for (const Link& l : delta.appeared) touched.push_back(l.from);
  for (const Link& l : delta.vanished) touched.push_back(l.from);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (NodeId n : touched) tables_[n].set_neighbors(host_.topology().neighbor_nodes(n));
}

void AntRouter::dump_tables(std::ostream& out, SimTime now) const {
  char buf[160];
  for (NodeId n = 0; n < tables_.size(); ++n) {
    for (NodeId dst : tables_[n].destinations()) {
      const auto mean = delays_[n].mean(dst);
      for (const PheromoneEntry& e : tables_[n].column(dst)) {
        const auto lq = dump_lq(n, e.via);
        std::snprintf(buf, sizeof buf, "t=%lld node=%u dst=%u via=%u P=%.6f T_mean=%s LQ=%s\n",
                      static_cast<long long>(now.us()), n, dst, e.via, e.p,
                      mean ? std::to_string(std::llround(*mean)).c_str() : "-",
                      lq ? std::to_string(*lq).c_str() : "-");
        out << buf;
      }
    }
  }
}

}  // namespace antmesh
