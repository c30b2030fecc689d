#include "antmesh/presets.hpp"

#include <algorithm>
#include <cmath>

#include "antmesh/rng.hpp"

namespace antmesh {

// Preset contents are part of the interface: changing coordinates, flows
// or loads changes every result derived from them.

namespace {

constexpr double kSpacing = 250.0;

NodeConfig make_node(double x, double y, std::vector<int> channels, bool gateway = false) {
  NodeConfig n;
  n.pos = {x, y};
  for (int c : channels) n.radios.push_back(Radio{c, 2'000'000.0});
  n.gateway = gateway;
  return n;
}

// 3 rows x 5 columns, lattice neighbors only. Node id = row * 5 + column.
std::vector<NodeConfig> grid_nodes(double y0, std::vector<int> channels) {
  std::vector<NodeConfig> nodes;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 5; ++col) {
      nodes.push_back(make_node(col * kSpacing, y0 + row * kSpacing, channels));
    }
  }
  return nodes;
}

// Three radios per node, like the backbone of the semi-random preset.
TopologySpec grid15() {
  TopologySpec t;
  t.nodes = grid_nodes(0.0, {1, 2, 3});
  t.nodes[14].gateway = true;
  return t;
}

// Gateways are the node nearest each corner of the area.
void mark_corner_gateways(TopologySpec& t) {
  const double w = t.params.area_width;
  const double h = t.params.area_height;
  const Position corners[] = {{0, 0}, {w, 0}, {0, h}, {w, h}};
  for (Position c : corners) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < t.nodes.size(); ++i) {
      if (distance(t.nodes[i].pos, c) < distance(t.nodes[best].pos, c)) best = i;
    }
    t.nodes[best].gateway = true;
  }
}

std::vector<int> random_channels(RngStream& rng, std::size_t count) {
  std::vector<int> pool{1, 2, 3};
  std::vector<int> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = rng.index(pool.size());
    out.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The 15-node grid lifted to y = 250..750, plus 20 nodes placed uniformly
// with one to three radios each.
TopologySpec semirandom20() {
  TopologySpec t;
  t.nodes = grid_nodes(kSpacing, {1, 2, 3});
  RngStream rng(20, "preset-semirandom20");
  for (int i = 0; i < 20; ++i) {
    const double x = std::round(rng.uniform(0.0, 1000.0));
    const double y = std::round(rng.uniform(0.0, 1000.0));
    const std::size_t radios = 1 + rng.index(3);
    t.nodes.push_back(make_node(x, y, random_channels(rng, radios)));
  }
  mark_corner_gateways(t);
  return t;
}

// 100 nodes uniform in 500 x 500, two radios each on a random pair of
// channels 1-3 (any two nodes share at least one channel).
TopologySpec random100() {
  TopologySpec t;
  t.params.area_width = 500.0;
  t.params.area_height = 500.0;
  RngStream rng(100, "preset-random100");
  for (int i = 0; i < 100; ++i) {
    const double x = std::round(rng.uniform(0.0, 500.0));
    const double y = std::round(rng.uniform(0.0, 500.0));
    t.nodes.push_back(make_node(x, y, random_channels(rng, 2)));
  }
  mark_corner_gateways(t);
  return t;
}

FlowSpec flow(std::string id, NodeId src, std::optional<NodeId> dst, double rate, double start = 0.0,
              std::optional<double> stop = std::nullopt) {
  FlowSpec f;
  f.id = std::move(id);
  f.src = src;
  f.dst = dst;
  f.rate_pps = rate;
  f.start = SimTime::from_seconds(start);
  if (stop) f.stop = SimTime::from_seconds(*stop);
  return f;
}

Scenario on(TopologySpec t, std::string name) {
  Scenario s;
  s.name = std::move(name);
  s.topology = std::move(t);
  return s;
}

Scenario fig4_learning() {
  Scenario s = on(grid15(), "fig4-learning");
  s.flows = {flow("f1", 0, 14, 20.0), flow("f2", 10, 14, 10.0), flow("f3", 5, 14, 10.0), flow("f4", 1, 14, 10.0)};
  s.load = {LoadAction{SimTime::zero(), true, {"f1"}},
            LoadAction{SimTime::from_seconds(10), true, {"f2", "f3", "f4"}},
            LoadAction{SimTime::from_seconds(20), false, {"f2", "f3", "f4"}}};
  s.run.horizon = SimTime::from_seconds(30);
  s.run.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sweep = {{"ant_rate", {"10", "20", "40"}}};
  return s;
}

Scenario fig4a_p0sweep() {
  Scenario s = on(grid15(), "fig4a-p0sweep");
  s.flows = {flow("f1", 0, 14, 80.0), flow("f2", 10, 14, 80.0), flow("f3", 4, 14, 80.0)};
  s.run.horizon = SimTime::from_seconds(30);
  s.run.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sweep = {{"p0", {"0", "0.2", "0.4", "0.6", "0.8", "1"}}};
  return s;
}

Scenario semirandom_default(std::string name) {
  Scenario s = on(semirandom20(), std::move(name));
  // Sources: the four random nodes chosen to sit away from the gateways.
  s.flows = {flow("f1", 15, std::nullopt, 50.0), flow("f2", 16, std::nullopt, 50.0),
             flow("f3", 17, std::nullopt, 50.0), flow("f4", 18, std::nullopt, 50.0)};
  // Several ant sources share the medium; at the default rate the ants
  // alone saturate it.
  s.routing.params.ant_rate_hz = 10.0;
  s.run.horizon = SimTime::from_seconds(30);
  return s;
}

Scenario fig5_saturation() {
  Scenario s = semirandom_default("fig5-saturation");
  s.run.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sweep = {{"flow_rate", {"10", "25", "50", "100", "200"}}, {"routing", {"antmesh", "hopant"}}};
  return s;
}

Scenario random100_mobile(std::string name) {
  Scenario s = on(random100(), std::move(name));
  s.flows = {flow("f1", 3, 71, 10.0), flow("f2", 12, 88, 10.0), flow("f3", 27, 40, 10.0),
             flow("f4", 55, 9, 10.0), flow("f5", 63, 18, 10.0), flow("f6", 94, 36, 10.0)};
  s.routing.params.ant_rate_hz = 10.0;
  s.mobility.speed_mps = 10.0;
  s.mobility.mobile_fraction = 1.0;
  s.run.horizon = SimTime::from_seconds(60);
  return s;
}

Scenario fig6_speed() {
  Scenario s = random100_mobile("fig6-speed-sweep");
  s.run.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sweep = {{"speed", {"0", "5", "10", "20", "30"}}, {"routing", {"antmesh", "hopant", "static"}}};
  return s;
}

Scenario fig6_fraction() {
  Scenario s = random100_mobile("fig6-mobile-fraction");
  s.run.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sweep = {{"mobile_fraction", {"0.2", "0.4", "0.6", "0.8", "1"}}, {"routing", {"antmesh", "hopant", "static"}}};
  return s;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> list{
      {"grid15", "3x5 grid, three radios (channels 1-3), 250 m spacing, gateway 14, no flows"},
      {"semirandom20", "grid15 backbone (3 radios) plus 20 random nodes, 4 flows to random gateways"},
      {"random100-mobile", "100 nodes in 500x500 m, 2 radios, 6 flows, all nodes moving at 10 m/s, 60 s"},
      {"fig4-learning", "grid15, flow 0->14 throughout, 3 more flows during 10-20 s, ant rate sweep"},
      {"fig4a-p0sweep", "grid15, three 80 pps flows into the gateway, p0 sweep"},
      {"fig5-saturation", "semirandom20, flow rate sweep 10-200 pps, antmesh vs hopant"},
      {"fig6-speed-sweep", "random100 mobility, speed sweep 0-30 m/s, three routers"},
      {"fig6-mobile-fraction", "random100 at 10 m/s, mobile fraction sweep 20-100%, three routers"},
  };
  return list;
}

std::optional<TopologySpec> topology_preset(std::string_view name) {
  if (name == "grid15") return grid15();
  if (name == "semirandom20") return semirandom20();
  if (name == "random100") return random100();
  return std::nullopt;
}

std::optional<Scenario> scenario_preset(std::string_view name) {
  if (name == "grid15") return on(grid15(), "grid15");
  if (name == "semirandom20") return semirandom_default("semirandom20");
  if (name == "random100" || name == "random100-mobile") return random100_mobile(std::string(name));
  if (name == "fig4-learning") return fig4_learning();
  if (name == "fig4a-p0sweep") return fig4a_p0sweep();
  if (name == "fig5-saturation") return fig5_saturation();
  if (name == "fig6-speed-sweep") return fig6_speed();
  if (name == "fig6-mobile-fraction") return fig6_fraction();
  return std::nullopt;
}

}  // namespace antmesh
