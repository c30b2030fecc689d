#include "antmesh/simulator.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace antmesh {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::packet_arrival: return "packet-arrival";
    case EventKind::tx_complete: return "tx-complete";
    case EventKind::ant_timer: return "ant-timer";
    case EventKind::hello_timer: return "hello-timer";
    case EventKind::mobility_tick: return "mobility-tick";
    case EventKind::flow_start: return "flow-start";
    case EventKind::flow_stop: return "flow-stop";
    case EventKind::metrics_sample: return "metrics-sample";
  }
  return "unknown";
}

std::uint64_t Simulator::schedule(Event event) {
  if (event.fire_at < now_) {
    throw SchedulingError("event scheduled at " + std::to_string(event.fire_at.us()) +
                          " us, before current time " + std::to_string(now_.us()) + " us");
  }
  event.seq = next_seq_++;
  const std::uint64_t seq = event.seq;
  heap_.push_back(std::move(event));
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

std::uint64_t Simulator::schedule(SimTime at, EventKind kind, std::uint32_t node, std::int64_t detail,
                                  std::function<void()> action) {
  Event e;
  e.fire_at = at;
  e.kind = kind;
  e.node = node;
  e.detail = detail;
  e.action = std::move(action);
  return schedule(std::move(e));
}

std::size_t Simulator::run_until(SimTime end) {
  std::size_t count = 0;
  while (!heap_.empty() && heap_.front().fire_at <= end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Event e = std::move(heap_.back());
    heap_.pop_back();
    now_ = e.fire_at;
    if (trace_) {
      *trace_ << e.fire_at.us() << '\t' << e.seq << '\t' << to_string(e.kind) << "\tnode=" << e.node
              << " detail=" << e.detail << '\n';
    }
    ++count;
    ++dispatched_;
    if (e.action) e.action();
  }
  if (end > now_) now_ = end;
  return count;
}

}  // namespace antmesh
