#include "antmesh/mobility.hpp"

#include <stdexcept>

namespace antmesh {

RandomWaypoint::RandomWaypoint(MobilityParams params, std::vector<bool> mobile, const Topology& topo,
                               RngStream& rng)
    : params_(params), mobile_(std::move(mobile)), states_(topo.size()) {
  if (mobile_.size() != topo.size()) throw std::invalid_argument("mobility mask size mismatch");
  if (params_.speed_mps < 0.0) throw std::invalid_argument("speed must be nonnegative");
  if (params_.tick.us() <= 0) throw std::invalid_argument("mobility tick must be positive");
  for (NodeId i = 0; i < topo.size(); ++i) {
    states_[i].speed_mps = params_.speed_mps;
    states_[i].target = mobile_[i] ? draw_target(topo, rng) : topo.position(i);
  }
}

Position RandomWaypoint::draw_target(const Topology& topo, RngStream& rng) const {
  const double x = rng.uniform(0.0, topo.params().area_width);
  const double y = rng.uniform(0.0, topo.params().area_height);
  return {x, y};
}

LinkDelta RandomWaypoint::tick(SimTime now, Topology& topo, RngStream& rng) {
  const double step = params_.speed_mps * params_.tick.seconds();
  if (step > 0.0) {
    for (NodeId i = 0; i < topo.size(); ++i) {
      if (!mobile_[i]) continue;
      WaypointState& st = states_[i];
      if (now < st.pause_until) continue;
      const Position p = topo.position(i);
      const double d = distance(p, st.target);
      if (d <= step) {
        topo.set_position(i, st.target);
        if (params_.pause_s > 0.0) st.pause_until = now + SimTime::from_seconds(params_.pause_s);
        st.target = draw_target(topo, rng);
      } else {
        const double f = step / d;
        topo.set_position(i, {p.x + (st.target.x - p.x) * f, p.y + (st.target.y - p.y) * f});
      }
    }
  }
  return topo.rebuild_links();
}

}  // namespace antmesh
