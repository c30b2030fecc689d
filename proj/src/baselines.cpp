#include "antmesh/baselines.hpp"

#include <deque>
#include <ostream>

namespace antmesh {

std::vector<int> hop_distances(const Topology& topo, NodeId dst) {
  std::vector<int> dist(topo.size(), -1);
  std::deque<NodeId> frontier{dst};
  dist[dst] = 0;
  while (!frontier.empty()) {
    const NodeId n = frontier.front();
    frontier.pop_front();
    for (NodeId m : topo.neighbor_nodes(n)) {
      if (dist[m] >= 0) continue;
      dist[m] = dist[n] + 1;
      frontier.push_back(m);
    }
  }
  return dist;
}

namespace {

std::optional<NodeId> next_from(const Topology& topo, const std::vector<int>& dist, NodeId from) {
  if (dist[from] <= 0) return std::nullopt;
  // neighbor_nodes is ascending, so the first match has the lowest id.
  for (NodeId m : topo.neighbor_nodes(from)) {
    if (dist[m] == dist[from] - 1) return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NodeId> min_hop_next(const Topology& topo, NodeId from, NodeId dst) {
  return next_from(topo, hop_distances(topo, dst), from);
}

std::optional<NodeId> StaticRouter::route_data(NodeId at, const Packet& packet) {
  const Topology& topo = host_.topology();
  if (version_ != topo.version()) {
    version_ = topo.version();
    next_.assign(topo.size(), {});
    ready_.assign(topo.size(), false);
  }
  const NodeId dst = packet.dst;
  if (!ready_[dst]) {
    const auto dist = hop_distances(topo, dst);
    auto& col = next_[dst];
    col.assign(topo.size(), std::nullopt);
    for (NodeId n = 0; n < topo.size(); ++n) col[n] = next_from(topo, dist, n);
    ready_[dst] = true;
  }
  return next_[dst][at];
}

void StaticRouter::dump_tables(std::ostream& out, SimTime now) const {
  for (NodeId dst = 0; dst < next_.size(); ++dst) {
    if (!ready_[dst]) continue;
    for (NodeId n = 0; n < next_[dst].size(); ++n) {
      if (!next_[dst][n]) continue;
      out << "t=" << now.us() << " node=" << n << " dst=" << dst << " via=" << *next_[dst][n] << '\n';
    }
  }
}

namespace {

AntParams ant_params(const HopAntParams& p) {
  AntParams a;
  a.ant_p0 = p.ant_p0;
  a.data_p0 = 1.0;
  a.ant_rate_hz = p.ant_rate_hz;
  a.window = p.window;
  a.delta_p_cap = p.delta_p_cap;
  a.sources = p.ant_sources;
  return a;
}

}  // namespace

HopAntRouter::HopAntRouter(RouterHost& host, HopAntParams params) : AntRouter(host, ant_params(params)) {}

}  // namespace antmesh
