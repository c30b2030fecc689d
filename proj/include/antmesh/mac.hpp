#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "antmesh/packet.hpp"
#include "antmesh/rng.hpp"
#include "antmesh/simulator.hpp"
#include "antmesh/topology.hpp"

namespace antmesh {

/// 802.11 frame timings in microseconds.
struct MacConstants {
  std::int64_t t_rts = 352;
  std::int64_t t_cts = 304;
  std::int64_t t_ack = 304;
  std::int64_t t_sifs = 10;
  std::int64_t t_difs = 50;
  bool operator==(const MacConstants&) const = default;
};

/// RTS + CTS + 3 SIFS + DIFS + ACK; without RTS/CTS the first two terms drop.
std::int64_t mac_overhead(const MacConstants& c, bool rts_cts = true);

/// Serialization time of `bits` at `rate_bps`, rounded to the nearest microsecond.
std::int64_t airtime_us(std::uint32_t bits, double rate_bps);

/// E[T] = n_tx * (MAC overhead + bits / rate).
std::int64_t expected_tx_time(std::uint32_t bits, double rate_bps, int n_tx, const MacConstants& c,
                              bool rts_cts = true);

struct TxAttempts {
  int attempts = 1;
  bool delivered = true;
};

/// Attempts until first success with per-attempt failure p_fail, capped at
/// retry_limit; `delivered` is false when every attempt failed.
TxAttempts sample_n_tx(RngStream& rng, double p_fail, int retry_limit);

enum class DropCause : std::uint8_t { queue_overflow, mac_loss, ttl_expired, no_route, horizon_cut };

struct QueuedFrame {
  Packet packet;
  NodeId next_hop = kBroadcast;
};

/// Two-lane radio queue: control frames always leave before data frames.
class RadioQueue {
 public:
  explicit RadioQueue(std::size_t data_capacity = 20) : capacity_(data_capacity) {}

  /// Control frames are always admitted; data frames only below capacity.
  bool admits(const Packet& p) const { return p.is_control() || data_.size() < capacity_; }
  /// Returns false (and leaves the frame untouched) if the data lane is full.
  bool push(QueuedFrame& frame);
  std::optional<QueuedFrame> pop();
  const QueuedFrame* front() const;

  bool empty() const { return control_.empty() && data_.empty(); }
  std::size_t data_size() const { return data_.size(); }
  std::size_t control_size() const { return control_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<QueuedFrame> control_;
  std::deque<QueuedFrame> data_;
};

struct MacConfig {
  MacConstants constants;
  bool use_rts_cts_overhead = true;
  double p_fail = 0.1;
  int retry_limit = 7;
  std::size_t buffer = 20;
  int ttl = 32;
  bool operator==(const MacConfig&) const = default;
};

/// Per-radio queues plus a serialized contention model.
///
/// Two transmissions on one channel conflict when any endpoint of one is
/// within interference range of any endpoint of the other; conflicting
/// transmissions never overlap in time. Radios waiting for the medium are
/// scanned in (request time, node, radio) order whenever it may have freed up.
class Mac {
 public:
  struct Hooks {
    std::function<void(NodeId to, NodeId from, int channel, Packet)> deliver;
    std::function<void(NodeId at, const Packet&, DropCause)> drop;
    std::function<void(NodeId at, NodeId next_hop, int channel, const Packet&, SimTime duration)> tx_start;
  };

  Mac(MacConfig config, Simulator& sim, const Topology& topo, RngStream& loss, Hooks hooks);

  /// Unicast on the radio tuned to `channel`. Returns false on queue overflow.
  bool enqueue(NodeId node, int channel, NodeId next_hop, Packet packet);
  /// One-hop broadcast on the radio tuned to `channel` (control lane).
  void broadcast(NodeId node, int channel, Packet packet);

  std::uint32_t data_queue(NodeId node, int channel) const;
  std::uint32_t total_data_queue(NodeId node) const;
  std::size_t control_queue(NodeId node, int channel) const;
  bool transmitting(NodeId node, int channel) const;
  std::size_t active_transmissions(int channel) const;
  /// Data packets still held in queues or on the air.
  std::size_t data_in_flight() const;

  const MacConfig& config() const { return config_; }

 private:
  struct RadioState {
    RadioQueue queue;
    int channel = 0;
    double bandwidth_bps = 0;
    bool busy = false;
    bool waiting = false;
    bool sending_data = false;
  };
  struct Active {
    NodeId tx;
    NodeId rx;
  };
  using WaitKey = std::tuple<std::int64_t, NodeId, std::size_t>;
  struct ChannelState {
    std::vector<Active> active;
    std::set<WaitKey> waiting;
  };

  RadioState& radio(NodeId node, std::size_t idx) { return radios_[node][idx]; }
  std::size_t radio_for(NodeId node, int channel) const;
  void request(NodeId node, std::size_t idx);
  void try_start(int channel);
  bool conflicts(const ChannelState& ch, NodeId tx, NodeId rx) const;
  void start(NodeId node, std::size_t idx);
  void complete(NodeId node, std::size_t idx, QueuedFrame frame, bool delivered);

  MacConfig config_;
  Simulator& sim_;
  const Topology& topo_;
  RngStream& loss_;
  Hooks hooks_;
  std::vector<std::vector<RadioState>> radios_;
  std::map<int, ChannelState> channels_;
};

}  // namespace antmesh
