#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "antmesh/sim_time.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

enum class PacketKind : std::uint8_t { data, fsa, bsa, hsa };

/// One traversed hop: the node that transmitted and the channel it used.
struct Hop {
  NodeId node = 0;
  int channel = 0;
  bool operator==(const Hop&) const = default;
};

/// Payload of forward/backward smart ants.
///
/// A forward ant appends to `hops` and grows `visited`; the backward ant
/// walks the same `hops` in reverse, `cursor` pointing at the hop whose
/// transmitter processes the ant next.
struct SmartAnt {
  NodeId src = 0;
  NodeId dst = 0;
  std::vector<Hop> hops;
  std::int64_t trip_us = 0;
  std::vector<NodeId> visited;
  std::size_t cursor = 0;

  bool was_visited(NodeId n) const { return std::find(visited.begin(), visited.end(), n) != visited.end(); }
};

struct NeighborQueue {
  NodeId node = 0;
  std::uint32_t queue = 0;
  bool operator==(const NeighborQueue&) const = default;
};

/// Payload of a hello smart ant broadcast on one channel.
struct HelloPayload {
  int channel = 0;
  std::uint32_t queue = 0;        // sender's data queue on `channel`
  std::uint32_t total_queue = 0;  // sender's data queue over all radios
  std::vector<NeighborQueue> neighbors;
};

struct Packet {
  PacketKind kind = PacketKind::data;
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t size_bits = 4096;
  SimTime born_at{};
  int ttl = 32;
  std::uint64_t id = 0;
  int flow = -1;
  NodeId prev_hop = kBroadcast;
  int arrival_channel = -1;
  std::variant<std::monostate, SmartAnt, HelloPayload> payload;

  bool is_control() const { return kind != PacketKind::data; }
  SmartAnt& ant() { return std::get<SmartAnt>(payload); }
  const SmartAnt& ant() const { return std::get<SmartAnt>(payload); }
  HelloPayload& hello() { return std::get<HelloPayload>(payload); }
  const HelloPayload& hello() const { return std::get<HelloPayload>(payload); }
};

// Control packet sizes: 64 B + 8 B per recorded hop for FSA/BSA, 32 B + 12 B
// per advertised neighbor for HSA.
inline std::uint32_t ant_size_bits(std::size_t hops) { return static_cast<std::uint32_t>((64 + 8 * hops) * 8); }
inline std::uint32_t hello_size_bits(std::size_t neighbors) {
  return static_cast<std::uint32_t>((32 + 12 * neighbors) * 8);
}

}  // namespace antmesh
