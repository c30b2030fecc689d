#include "antmesh/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace antmesh {

TrafficPlan apply_load_script(const std::vector<FlowSpec>& flows, const LoadScript& script,
                              const std::vector<NodeId>& gateways, SimTime horizon, RngStream& rng) {
  TrafficPlan plan;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const FlowSpec& f = flows[i];
    if (!ids.insert(f.id).second) throw TrafficError("duplicate flow id '" + f.id + "'");
    if (!(f.rate_pps > 0.0)) throw TrafficError("flow '" + f.id + "': rate must be positive");
    if (f.pkt_bits == 0) throw TrafficError("flow '" + f.id + "': packet size must be positive");
    ResolvedFlow r;
    r.index = i;
    r.id = f.id;
    r.src = f.src;
    r.rate_pps = f.rate_pps;
    r.start = f.start;
    r.stop = f.stop.value_or(horizon);
    r.pkt_bits = f.pkt_bits;
    if (f.dst) {
      r.dst = *f.dst;
    } else {
      std::vector<NodeId> candidates;
      for (NodeId g : gateways) {
        if (g != f.src) candidates.push_back(g);
      }
      if (candidates.empty()) throw TrafficError("flow '" + f.id + "': no gateway available");
      r.dst = candidates[rng.index(candidates.size())];
    }
    if (r.dst == r.src) throw TrafficError("flow '" + f.id + "': source equals destination");
    plan.flows.push_back(std::move(r));
  }

  SimTime last{};
  for (const LoadAction& a : script) {
    if (a.at < last) throw TrafficError("load script times must be nondecreasing");
    last = a.at;
    for (const std::string& id : a.flows) {
      auto it = std::find_if(plan.flows.begin(), plan.flows.end(), [&](const ResolvedFlow& f) { return f.id == id; });
      if (it == plan.flows.end()) throw TrafficError("load script names unknown flow '" + id + "'");
      if (a.add) {
        it->start = a.at;
      } else {
        it->stop = a.at;
      }
    }
    if (plan.change_points.empty() || plan.change_points.back() != a.at) plan.change_points.push_back(a.at);
  }

  for (const ResolvedFlow& f : plan.flows) {
    if (!(f.start < f.stop)) throw TrafficError("flow '" + f.id + "': stop must be after start");
  }
  return plan;
}

SimTime injection_time(const ResolvedFlow& flow, std::uint64_t k, std::size_t flow_count) {
  const double period_us = 1e6 / flow.rate_pps;
  const double n = static_cast<double>(std::max<std::size_t>(flow_count, 1));
  const auto offset = static_cast<std::int64_t>(std::floor(static_cast<double>(flow.index) * period_us / n));
  const auto step = static_cast<std::int64_t>(std::floor(static_cast<double>(k) * period_us));
  return flow.start + SimTime::from_us(offset + step);
}

std::uint64_t injection_count(const ResolvedFlow& flow, std::size_t flow_count) {
  std::uint64_t k = 0;
  while (injection_time(flow, k, flow_count) < flow.stop) ++k;
  return k;
}

}  // namespace antmesh
