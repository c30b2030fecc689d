#include "antmesh/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace antmesh {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

Topology::Topology(TopologyParams params, std::vector<NodeConfig> nodes)
    : params_(params), nodes_(std::move(nodes)) {
  if (params_.tx_range <= 0.0) throw TopologyError("tx_range must be positive");
  if (params_.interference_multiplier <= 0.0) throw TopologyError("interference_multiplier must be positive");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    const std::string who = "node " + std::to_string(i);
    if (n.radios.empty() || n.radios.size() > 3) throw TopologyError(who + ": needs 1 to 3 radios");
    for (std::size_t a = 0; a < n.radios.size(); ++a) {
      if (n.radios[a].channel <= 0) throw TopologyError(who + ": channels must be positive");
      if (n.radios[a].bandwidth_bps <= 0.0) throw TopologyError(who + ": bandwidth must be positive");
      for (std::size_t b = a + 1; b < n.radios.size(); ++b) {
        if (n.radios[a].channel == n.radios[b].channel) throw TopologyError(who + ": duplicate channel");
      }
    }
    if (n.pos.x < 0.0 || n.pos.y < 0.0 || n.pos.x > params_.area_width || n.pos.y > params_.area_height) {
      throw TopologyError(who + ": position outside the area");
    }
  }
  adjacency_ = compute_links();
}

std::vector<std::vector<Link>> Topology::compute_links() const {
  std::vector<std::vector<Link>> adj(nodes_.size());
  for (NodeId a = 0; a < nodes_.size(); ++a) {
    for (NodeId b = 0; b < nodes_.size(); ++b) {
      if (a == b) continue;
      if (distance(nodes_[a].pos, nodes_[b].pos) > params_.tx_range) continue;
      for (const Radio& ra : nodes_[a].radios) {
        for (const Radio& rb : nodes_[b].radios) {
          if (ra.channel != rb.channel) continue;
          adj[a].push_back(Link{a, b, ra.channel, std::min(ra.bandwidth_bps, rb.bandwidth_bps)});
        }
      }
    }
    std::sort(adj[a].begin(), adj[a].end(), [](const Link& x, const Link& y) {
      return x.to != y.to ? x.to < y.to : x.channel < y.channel;
    });
  }
  return adj;
}

std::vector<NodeId> Topology::neighbor_nodes(NodeId id) const {
  std::vector<NodeId> out;
  for (const Link& l : adjacency_.at(id)) {
    if (out.empty() || out.back() != l.to) out.push_back(l.to);
  }
  return out;
}

bool Topology::is_neighbor(NodeId a, NodeId b) const {
  const auto& links = adjacency_.at(a);
  return std::any_of(links.begin(), links.end(), [b](const Link& l) { return l.to == b; });
}

bool Topology::has_link(NodeId from, NodeId to, int channel) const { return link(from, to, channel).has_value(); }

std::optional<Link> Topology::link(NodeId from, NodeId to, int channel) const {
  for (const Link& l : adjacency_.at(from)) {
    if (l.to == to && l.channel == channel) return l;
  }
  return std::nullopt;
}

std::vector<int> Topology::shared_channels(NodeId a, NodeId b) const {
  std::vector<int> out;
  for (const Link& l : adjacency_.at(a)) {
    if (l.to == b) out.push_back(l.channel);
  }
  return out;
}

std::vector<NodeId> Topology::interferers(NodeId id, int channel) const {
  std::vector<NodeId> out;
  const double range = interference_range();
  for (NodeId other = 0; other < nodes_.size(); ++other) {
    if (other == id) continue;
    if (!radio_index(other, channel)) continue;
    if (distance(nodes_[id].pos, nodes_[other].pos) <= range) out.push_back(other);
  }
  return out;
}

bool Topology::within_interference(NodeId a, NodeId b) const {
  return a == b || distance(nodes_.at(a).pos, nodes_.at(b).pos) <= interference_range();
}

std::optional<std::size_t> Topology::radio_index(NodeId id, int channel) const {
  const auto& radios = nodes_.at(id).radios;
  for (std::size_t i = 0; i < radios.size(); ++i) {
    if (radios[i].channel == channel) return i;
  }
  return std::nullopt;
}

std::vector<NodeId> Topology::gateways() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].gateway) out.push_back(i);
  }
  return out;
}

void Topology::set_position(NodeId id, Position pos) {
  pos.x = std::clamp(pos.x, 0.0, params_.area_width);
  pos.y = std::clamp(pos.y, 0.0, params_.area_height);
  nodes_.at(id).pos = pos;
}

LinkDelta Topology::rebuild_links() {
  auto fresh = compute_links();
  LinkDelta delta;
  auto less = [](const Link& x, const Link& y) {
    return x.to != y.to ? x.to < y.to : x.channel < y.channel;
  };
  for (NodeId a = 0; a < nodes_.size(); ++a) {
    std::set_difference(fresh[a].begin(), fresh[a].end(), adjacency_[a].begin(), adjacency_[a].end(),
                        std::back_inserter(delta.appeared), less);
    std::set_difference(adjacency_[a].begin(), adjacency_[a].end(), fresh[a].begin(), fresh[a].end(),
                        std::back_inserter(delta.vanished), less);
  }
  adjacency_ = std::move(fresh);
  if (!delta.empty()) ++version_;
  return delta;
}

std::size_t Topology::link_count() const {
  std::size_t n = 0;
  for (const auto& l : adjacency_) n += l.size();
  return n;
}

}  // namespace antmesh
