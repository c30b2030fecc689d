#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "antmesh/sim_time.hpp"

namespace antmesh {

enum class EventKind : std::uint8_t {
  packet_arrival,
  tx_complete,
  ant_timer,
  hello_timer,
  mobility_tick,
  flow_start,
  flow_stop,
  metrics_sample,
};

std::string_view to_string(EventKind kind);

struct Event {
  SimTime fire_at;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::metrics_sample;
  // Small summary fields; they only feed the trace.
  std::uint32_t node = 0;
  std::int64_t detail = 0;
  std::function<void()> action;
};

/// Raised when an event is scheduled before the current clock.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Single-threaded discrete-event engine ordered by (fire_at, seq).
class Simulator {
 public:
  SimTime now() const { return now_; }

  /// Enqueue an event; its seq is assigned here. Returns the assigned seq.
  std::uint64_t schedule(Event event);
  std::uint64_t schedule(SimTime at, EventKind kind, std::uint32_t node, std::int64_t detail,
                         std::function<void()> action);
  std::uint64_t schedule_in(SimTime delay, EventKind kind, std::uint32_t node, std::int64_t detail,
                            std::function<void()> action) {
    return schedule(now_ + delay, kind, node, detail, std::move(action));
  }

  /// Dispatch every event with fire_at <= end, then set the clock to end.
  std::size_t run_until(SimTime end);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }

  /// Optional line trace: `<time_us>\t<seq>\t<kind>\t<summary>` per dispatch.
  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  std::vector<Event> heap_;
  SimTime now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::ostream* trace_ = nullptr;
};

}  // namespace antmesh
