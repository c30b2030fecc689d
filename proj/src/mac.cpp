#include "antmesh/mac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antmesh {

std::int64_t mac_overhead(const MacConstants& c, bool rts_cts) {
  std::int64_t oh = 3 * c.t_sifs + c.t_difs + c.t_ack;
  if (rts_cts) oh += c.t_rts + c.t_cts;
  return oh;
}

std::int64_t airtime_us(std::uint32_t bits, double rate_bps) {
  if (!(rate_bps > 0.0)) throw std::invalid_argument("link rate must be positive");
  return static_cast<std::int64_t>(std::llround(static_cast<double>(bits) * 1e6 / rate_bps));
}

std::int64_t expected_tx_time(std::uint32_t bits, double rate_bps, int n_tx, const MacConstants& c,
                              bool rts_cts) {
  if (n_tx < 1) throw std::invalid_argument("n_tx must be at least 1");
  return n_tx * (mac_overhead(c, rts_cts) + airtime_us(bits, rate_bps));
}

TxAttempts sample_n_tx(RngStream& rng, double p_fail, int retry_limit) {
  for (int attempt = 1; attempt <= retry_limit; ++attempt) {
    if (rng.uniform() >= p_fail) return {attempt, true};
  }
  return {std::max(retry_limit, 1), false};
}

bool RadioQueue::push(QueuedFrame& frame) {
  if (!admits(frame.packet)) return false;
  if (frame.packet.is_control()) {
    control_.push_back(std::move(frame));
  } else {
    data_.push_back(std::move(frame));
  }
  return true;
}

std::optional<QueuedFrame> RadioQueue::pop() {
  auto& lane = control_.empty() ? data_ : control_;
  if (lane.empty()) return std::nullopt;
  QueuedFrame f = std::move(lane.front());
  lane.pop_front();
  return f;
}

const QueuedFrame* RadioQueue::front() const {
  if (!control_.empty()) return &control_.front();
  if (!data_.empty()) return &data_.front();
  return nullptr;
}

Mac::Mac(MacConfig config, Simulator& sim, const Topology& topo, RngStream& loss, Hooks hooks)
    : config_(config), sim_(sim), topo_(topo), loss_(loss), hooks_(std::move(hooks)) {
  if (config_.p_fail < 0.0 || config_.p_fail > 1.0) throw std::invalid_argument("p_fail must be in [0,1]");
  if (config_.retry_limit < 1) throw std::invalid_argument("retry_limit must be at least 1");
  radios_.resize(topo_.size());
  for (NodeId n = 0; n < topo_.size(); ++n) {
    for (const Radio& r : topo_.node(n).radios) {
      RadioState st{RadioQueue(config_.buffer)};
      st.channel = r.channel;
      st.bandwidth_bps = r.bandwidth_bps;
      radios_[n].push_back(std::move(st));
      channels_[r.channel];
    }
  }
}

std::size_t Mac::radio_for(NodeId node, int channel) const {
  auto idx = topo_.radio_index(node, channel);
  if (!idx) throw std::logic_error("node " + std::to_string(node) + " has no radio on channel " +
                                   std::to_string(channel));
  return *idx;
}

bool Mac::enqueue(NodeId node, int channel, NodeId next_hop, Packet packet) {
  const std::size_t idx = radio_for(node, channel);
  RadioState& r = radio(node, idx);
  QueuedFrame frame{std::move(packet), next_hop};
  if (!r.queue.push(frame)) {
    if (hooks_.drop) hooks_.drop(node, frame.packet, DropCause::queue_overflow);
    return false;
  }
  if (!r.busy && !r.waiting) {
    request(node, idx);
    try_start(channel);
  }
  return true;
}

void Mac::broadcast(NodeId node, int channel, Packet packet) {
  enqueue(node, channel, kBroadcast, std::move(packet));
}

void Mac::request(NodeId node, std::size_t idx) {
  RadioState& r = radio(node, idx);
  r.waiting = true;
  channels_[r.channel].waiting.emplace(sim_.now().us(), node, idx);
}

bool Mac::conflicts(const ChannelState& ch, NodeId tx, NodeId rx) const {
  auto near = [this](NodeId a, NodeId b) {
    if (a == kBroadcast || b == kBroadcast) return false;
    return topo_.within_interference(a, b);
  };
  for (const Active& a : ch.active) {
    if (near(tx, a.tx) || near(tx, a.rx) || near(rx, a.tx) || near(rx, a.rx)) return true;
  }
  return false;
}

void Mac::try_start(int channel) {
  ChannelState& ch = channels_[channel];
  const std::vector<WaitKey> order(ch.waiting.begin(), ch.waiting.end());
  // Radios that must keep waiting still hold their place in line: a later
  // request may not start if it would conflict with an earlier blocked one.
  ChannelState blocked;
  for (const WaitKey& key : order) {
    const auto [t, node, idx] = key;
    RadioState& r = radio(node, idx);
    // Frames whose next hop moved out of range are discarded at the head.
    while (const QueuedFrame* head = r.queue.front()) {
      if (head->next_hop == kBroadcast || topo_.has_link(node, head->next_hop, channel)) break;
      QueuedFrame f = *r.queue.pop();
      if (hooks_.drop) hooks_.drop(node, f.packet, DropCause::no_route);
    }
    const QueuedFrame* head = r.queue.front();
    if (!head) {
      ch.waiting.erase(key);
      r.waiting = false;
      continue;
    }
    if (conflicts(ch, node, head->next_hop) || conflicts(blocked, node, head->next_hop)) {
      blocked.active.push_back({node, head->next_hop});
      continue;
    }
    ch.waiting.erase(key);
    r.waiting = false;
    start(node, idx);
  }
}

void Mac::start(NodeId node, std::size_t idx) {
  RadioState& r = radio(node, idx);
  QueuedFrame frame = *r.queue.pop();
  const Packet& p = frame.packet;
  std::int64_t duration = 0;
  bool delivered = true;
  if (frame.next_hop == kBroadcast) {
    duration = config_.constants.t_difs + airtime_us(p.size_bits, r.bandwidth_bps);
  } else {
    const TxAttempts tx = sample_n_tx(loss_, config_.p_fail, config_.retry_limit);
    delivered = tx.delivered;
    const auto link = topo_.link(node, frame.next_hop, r.channel);
    const double bw = link ? link->bandwidth_bps : r.bandwidth_bps;
    // Ant frames are short and go out without the RTS/CTS handshake.
    const bool rts_cts = !p.is_control() && config_.use_rts_cts_overhead;
    duration = expected_tx_time(p.size_bits, bw, tx.attempts, config_.constants, rts_cts);
  }
  r.busy = true;
  r.sending_data = !p.is_control();
  channels_[r.channel].active.push_back({node, frame.next_hop});
  if (hooks_.tx_start) hooks_.tx_start(node, frame.next_hop, r.channel, p, SimTime::from_us(duration));
  sim_.schedule_in(SimTime::from_us(duration), EventKind::tx_complete, node, static_cast<std::int64_t>(p.id),
                   [this, node, idx, delivered, f = std::move(frame)]() mutable {
                     complete(node, idx, std::move(f), delivered);
                   });
}

void Mac::complete(NodeId node, std::size_t idx, QueuedFrame frame, bool delivered) {
  RadioState& r = radio(node, idx);
  const int channel = r.channel;
  ChannelState& ch = channels_[channel];
  auto it = std::find_if(ch.active.begin(), ch.active.end(), [&](const Active& a) {
    return a.tx == node && a.rx == frame.next_hop;
  });
  if (it != ch.active.end()) ch.active.erase(it);
  r.busy = false;
  r.sending_data = false;
  if (!r.queue.empty()) request(node, idx);
  try_start(channel);

  if (!delivered) {
    if (hooks_.drop) hooks_.drop(node, frame.packet, DropCause::mac_loss);
    return;
  }
  Packet& p = frame.packet;
  p.prev_hop = node;
  p.arrival_channel = channel;
  auto deliver_to = [this, node, channel](NodeId to, Packet pkt) {
    sim_.schedule_in(SimTime::zero(), EventKind::packet_arrival, to, static_cast<std::int64_t>(pkt.id),
                     [this, to, node, channel, pkt = std::move(pkt)]() mutable {
                       if (hooks_.deliver) hooks_.deliver(to, node, channel, std::move(pkt));
                     });
  };
  if (frame.next_hop == kBroadcast) {
    for (const Link& l : topo_.neighbors(node)) {
      if (l.channel == channel) deliver_to(l.to, p);
    }
  } else {
    deliver_to(frame.next_hop, std::move(p));
  }
}

std::uint32_t Mac::data_queue(NodeId node, int channel) const {
  auto idx = topo_.radio_index(node, channel);
  if (!idx) return 0;
  return static_cast<std::uint32_t>(radios_[node][*idx].queue.data_size());
}

std::uint32_t Mac::total_data_queue(NodeId node) const {
  std::uint32_t total = 0;
  for (const auto& r : radios_.at(node)) total += static_cast<std::uint32_t>(r.queue.data_size());
  return total;
}

std::size_t Mac::control_queue(NodeId node, int channel) const {
  auto idx = topo_.radio_index(node, channel);
  if (!idx) return 0;
  return radios_[node][*idx].queue.control_size();
}

bool Mac::transmitting(NodeId node, int channel) const {
  auto idx = topo_.radio_index(node, channel);
  return idx && radios_[node][*idx].busy;
}

std::size_t Mac::active_transmissions(int channel) const {
  auto it = channels_.find(channel);
  return it == channels_.end() ? 0 : it->second.active.size();
}

std::size_t Mac::data_in_flight() const {
  std::size_t n = 0;
  for (const auto& node : radios_) {
    for (const auto& r : node) n += r.queue.data_size() + (r.sending_data ? 1 : 0);
  }
  return n;
}

}  // namespace antmesh
