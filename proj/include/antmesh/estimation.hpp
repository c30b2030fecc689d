#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "antmesh/packet.hpp"
#include "antmesh/sim_time.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

// Link and path cost terms carried by backward ants. All delays are in
// integer microseconds.

/// LQ = E[T] * Q + E[T]: time for a newly queued packet to clear the link.
std::int64_t link_quality(std::int64_t e_tx_us, std::uint32_t queue);

/// LQ scaled by the busiest interferer queue, floored at one so an idle
/// neighborhood leaves LQ unchanged.
std::int64_t inter_flow_delay(std::int64_t lq_us, std::span<const std::uint32_t> interferer_queues);

/// Additive self-interference cost when two consecutive hops share a
/// channel: 2 * Q_next * L / B. Zero when the channels differ.
std::int64_t intra_flow_cost(int prev_channel, int cur_channel, std::uint32_t q_next, std::uint32_t pkt_bits,
                             double link_bps);

/// dp = min(cap, mean / (2 * trip)).
double reinforcement(double mean_trip_us, double trip_us, double cap);

/// Sliding window of the last W trip times per destination.
class DelayTable {
 public:
  explicit DelayTable(std::size_t window = 10) : window_(window == 0 ? 1 : window) {}

  void push(NodeId dst, double trip_us);
  std::optional<double> mean(NodeId dst) const;
  std::size_t samples(NodeId dst) const;
  std::size_t window() const { return window_; }

 private:
  struct Ring {
    std::deque<double> values;
    double sum = 0.0;
  };
  std::size_t window_;
  std::map<NodeId, Ring> rings_;
};

/// What a node knows about one outgoing link from the far end's hellos.
struct LinkEstimate {
  NodeId neighbor = 0;
  int channel = 0;
  std::int64_t lq_us = 0;
  std::uint32_t neighbor_queue = 0;
  std::uint32_t neighbor_total_queue = 0;
  std::vector<NeighborQueue> two_hop_queues;
  SimTime last_hello_at{};
};

class LinkEstimationTable {
 public:
  /// Record a hello heard from `from` on `hello.channel`; `lq_us` is the
  /// receiver's current link quality toward `from`.
  void on_hello(NodeId from, const HelloPayload& hello, std::int64_t lq_us, SimTime now);
  const LinkEstimate* find(NodeId neighbor, int channel) const;
  LinkEstimate* find(NodeId neighbor, int channel);
  /// Fresh while the last hello is at most `expiry` old.
  static bool fresh(const LinkEstimate& e, SimTime now, SimTime expiry) { return now - e.last_hello_at <= expiry; }

  /// Far endpoint queue plus its advertised neighbors' queues, omitting `self`.
  static std::vector<std::uint32_t> interferer_queues(const LinkEstimate& e, NodeId self);

  /// Neighbors heard on `channel` within `expiry`, with their last queue.
  std::vector<NeighborQueue> advertised(int channel, SimTime now, SimTime expiry) const;
  void forget(NodeId neighbor);
  std::size_t size() const { return entries_.size(); }
  const std::map<std::pair<NodeId, int>, LinkEstimate>& entries() const { return entries_; }

 private:
  std::map<std::pair<NodeId, int>, LinkEstimate> entries_;
};

}  // namespace antmesh
