#include "antmesh/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antmesh {

std::int64_t link_quality(std::int64_t e_tx_us, std::uint32_t queue) {
  return e_tx_us * static_cast<std::int64_t>(queue) + e_tx_us;
}

std::int64_t inter_flow_delay(std::int64_t lq_us, std::span<const std::uint32_t> interferer_queues) {
  std::uint32_t worst = 0;
  for (auto q : interferer_queues) worst = std::max(worst, q);
  return lq_us * static_cast<std::int64_t>(std::max<std::uint32_t>(1, worst));
}

std::int64_t intra_flow_cost(int prev_channel, int cur_channel, std::uint32_t q_next, std::uint32_t pkt_bits,
                             double link_bps) {
  if (!(link_bps > 0.0)) throw std::invalid_argument("link bandwidth must be positive");
  if (prev_channel != cur_channel) return 0;
  const double seconds = 2.0 * q_next * static_cast<double>(pkt_bits) / link_bps;
  return static_cast<std::int64_t>(std::llround(seconds * 1e6));
}

double reinforcement(double mean_trip_us, double trip_us, double cap) {
  if (!(trip_us > 0.0)) throw std::invalid_argument("trip time must be positive");
  return std::min(cap, 0.5 * (mean_trip_us / trip_us));
}

void DelayTable::push(NodeId dst, double trip_us) {
  Ring& r = rings_[dst];
  r.values.push_back(trip_us);
  r.sum += trip_us;
  if (r.values.size() > window_) {
    r.sum -= r.values.front();
    r.values.pop_front();
  }
  // Resum once the window is full so the running sum cannot drift.
  if (r.values.size() == window_) {
    r.sum = 0.0;
    for (double v : r.values) r.sum += v;
  }
}

std::optional<double> DelayTable::mean(NodeId dst) const {
  auto it = rings_.find(dst);
  if (it == rings_.end() || it->second.values.empty()) return std::nullopt;
  return it->second.sum / static_cast<double>(it->second.values.size());
}

std::size_t DelayTable::samples(NodeId dst) const {
  auto it = rings_.find(dst);
  return it == rings_.end() ? 0 : it->second.values.size();
}

void LinkEstimationTable::on_hello(NodeId from, const HelloPayload& hello, std::int64_t lq_us, SimTime now) {
  LinkEstimate& e = entries_[{from, hello.channel}];
  e.neighbor = from;
  e.channel = hello.channel;
  e.lq_us = lq_us;
  e.neighbor_queue = hello.queue;
  e.neighbor_total_queue = hello.total_queue;
  e.two_hop_queues = hello.neighbors;
  e.last_hello_at = now;
}

const LinkEstimate* LinkEstimationTable::find(NodeId neighbor, int channel) const {
  auto it = entries_.find({neighbor, channel});
  return it == entries_.end() ? nullptr : &it->second;
}

LinkEstimate* LinkEstimationTable::find(NodeId neighbor, int channel) {
  auto it = entries_.find({neighbor, channel});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::uint32_t> LinkEstimationTable::interferer_queues(const LinkEstimate& e, NodeId self) {
  std::vector<std::uint32_t> out;
  out.reserve(e.two_hop_queues.size() + 1);
  out.push_back(e.neighbor_queue);
  for (const auto& nq : e.two_hop_queues) {
    if (nq.node != self) out.push_back(nq.queue);
  }
  return out;
}

std::vector<NeighborQueue> LinkEstimationTable::advertised(int channel, SimTime now, SimTime expiry) const {
  std::vector<NeighborQueue> out;
  for (const auto& [key, e] : entries_) {
    if (key.second == channel && fresh(e, now, expiry)) out.push_back({e.neighbor, e.neighbor_queue});
  }
  return out;
}

void LinkEstimationTable::forget(NodeId neighbor) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    it = it->first.first == neighbor ? entries_.erase(it) : std::next(it);
  }
}

}  // namespace antmesh
