#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace antmesh {

using NodeId = std::uint32_t;
inline constexpr NodeId kBroadcast = UINT32_MAX;

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

struct Radio {
  int channel = 1;
  double bandwidth_bps = 2'000'000.0;
  bool operator==(const Radio&) const = default;
};

struct Link {
  NodeId from = 0;
  NodeId to = 0;
  int channel = 1;
  double bandwidth_bps = 2'000'000.0;
  bool operator==(const Link&) const = default;
};

struct NodeConfig {
  Position pos;
  std::vector<Radio> radios;
  bool gateway = false;
  bool operator==(const NodeConfig&) const = default;
};

struct TopologyParams {
  double area_width = 1000.0;
  double area_height = 1000.0;
  double tx_range = 250.0;
  double interference_multiplier = 2.0;
  bool operator==(const TopologyParams&) const = default;
};

/// Directed links that appeared or vanished during a rebuild.
struct LinkDelta {
  std::vector<Link> appeared;
  std::vector<Link> vanished;
  bool empty() const { return appeared.empty() && vanished.empty(); }
};

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unit-disc connectivity over multi-radio nodes.
///
/// A directed link (a, b, c) exists iff both nodes own a radio on channel c
/// and their distance is at most tx_range (closed disc). Links therefore
/// always come in symmetric pairs.
class Topology {
 public:
  Topology(TopologyParams params, std::vector<NodeConfig> nodes);

  std::size_t size() const { return nodes_.size(); }
  const TopologyParams& params() const { return params_; }
  const NodeConfig& node(NodeId id) const { return nodes_.at(id); }
  Position position(NodeId id) const { return nodes_.at(id).pos; }
  double interference_range() const { return params_.tx_range * params_.interference_multiplier; }

  /// Outgoing links of `id`, sorted by (to, channel).
  std::span<const Link> neighbors(NodeId id) const { return adjacency_.at(id); }
  /// Distinct neighbor node ids, ascending.
  std::vector<NodeId> neighbor_nodes(NodeId id) const;
  bool is_neighbor(NodeId a, NodeId b) const;
  bool has_link(NodeId from, NodeId to, int channel) const;
  std::optional<Link> link(NodeId from, NodeId to, int channel) const;
  /// Channels on which a and b are currently linked, ascending.
  std::vector<int> shared_channels(NodeId a, NodeId b) const;

  /// Nodes other than `id` with a radio on `channel` within interference range.
  std::vector<NodeId> interferers(NodeId id, int channel) const;
  bool within_interference(NodeId a, NodeId b) const;

  std::optional<std::size_t> radio_index(NodeId id, int channel) const;
  std::vector<NodeId> gateways() const;

  /// Moves a node; links are only refreshed by rebuild_links().
  void set_position(NodeId id, Position pos);
  /// Recomputes the link set and returns what changed.
  LinkDelta rebuild_links();
  /// Incremented whenever rebuild_links() changes the link set.
  std::uint64_t version() const { return version_; }
  std::size_t link_count() const;

 private:
  std::vector<std::vector<Link>> compute_links() const;

  TopologyParams params_;
  std::vector<NodeConfig> nodes_;
  std::vector<std::vector<Link>> adjacency_;
  std::uint64_t version_ = 0;
};

}  // namespace antmesh
