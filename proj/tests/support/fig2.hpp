#pragma once

// The illustrative two-path instance: S reaches D either over A (channels
// 2, 2, 4: S-A, A-F, F-D) or over G and C (channels 1, 3, 2, 4: S-G, G-C,
// C-F, F-D). Queue lengths: S 0, A 4, G 0, C 1, F 1, D 0, E 5, B 1, where
// E is F's extra neighbor on channel 2 and B is D's extra neighbor on
// channel 4. Link estimates are built through the real hello path.

#include <map>
#include <optional>
#include <vector>

#include "antmesh/ant_router.hpp"
#include "antmesh/antmesh_router.hpp"
#include "antmesh/estimation.hpp"

namespace fig2 {

using antmesh::NodeId;

enum : NodeId { S = 0, A, G, C, F, D, E, B };

inline const std::map<NodeId, std::uint32_t>& queues() {
  static const std::map<NodeId, std::uint32_t> q{{S, 0}, {A, 4}, {G, 0}, {C, 1}, {F, 1}, {D, 0}, {E, 5}, {B, 1}};
  return q;
}

// Neighbors each node advertises per channel (as its hellos would).
inline std::vector<antmesh::NeighborQueue> advertised(NodeId n, int channel) {
  std::vector<NodeId> ids;
  if (n == A && channel == 2) ids = {S, F};
  if (n == F && channel == 2) ids = {A, C, E};
  if (n == F && channel == 4) ids = {D};
  if (n == D && channel == 4) ids = {F, B};
  if (n == G && channel == 1) ids = {S};
  if (n == G && channel == 3) ids = {C};
  if (n == C && channel == 3) ids = {G};
  if (n == C && channel == 2) ids = {F};
  std::vector<antmesh::NeighborQueue> out;
  for (NodeId i : ids) out.push_back({i, queues().at(i)});
  return out;
}

struct Hop {
  NodeId self;
  NodeId via;
  int channel;
  std::optional<int> next_channel;
};

inline const std::vector<Hop>& path_via_a() {
  static const std::vector<Hop> p{{F, D, 4, std::nullopt}, {A, F, 2, 4}, {S, A, 2, 2}};
  return p;
}

inline const std::vector<Hop>& path_via_g() {
  static const std::vector<Hop> p{{F, D, 4, std::nullopt}, {C, F, 2, 4}, {G, C, 3, 2}, {S, G, 1, 3}};
  return p;
}

// Hello from `far` as received by the node on the other end of `channel`.
inline antmesh::LinkEstimate estimate(NodeId far, int channel, antmesh::SimTime now) {
  antmesh::HelloPayload h;
  h.channel = channel;
  h.queue = queues().at(far);
  h.total_queue = queues().at(far);
  h.neighbors = advertised(far, channel);
  antmesh::LinkEstimationTable t;
  t.on_hello(far, h, 0, now);
  return *t.find(far, channel);
}

// Trip accumulated at each node of `path`, in processing order.
inline std::vector<std::int64_t> trips(const std::vector<Hop>& path) {
  const antmesh::LinkCostModel model;
  const antmesh::SimTime now = antmesh::SimTime::from_seconds(1);
  std::vector<std::int64_t> out;
  std::int64_t trip = 0;
  for (const Hop& h : path) {
    const antmesh::LinkEstimate e = estimate(h.via, h.channel, now);
    trip += antmesh::backward_hop_cost(model, h.self, queues().at(h.self), 2e6, &e, now, h.channel, h.next_channel)
                .itt_us();
    out.push_back(trip);
  }
  return out;
}

}  // namespace fig2
