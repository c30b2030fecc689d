#include <algorithm>
#include <cmath>

#include "antmesh/mobility.hpp"
#include "antmesh/presets.hpp"
#include "antmesh/rng.hpp"
#include "antmesh/topology.hpp"
#include "doctest.h"

using namespace antmesh;

namespace {

NodeConfig at(double x, double y, std::vector<int> channels) {
  NodeConfig n;
  n.pos = {x, y};
  for (int c : channels) n.radios.push_back(Radio{c, 2e6});
  return n;
}

Topology grid() {
  auto spec = topology_preset("grid15");
  REQUIRE(spec);
  return Topology(spec->params, spec->nodes);
}

}  // namespace

TEST_SUITE("topology") {
  TEST_CASE("isolated node has no neighbors") {
    Topology t({}, {at(0, 0, {1}), at(900, 900, {1})});
    CHECK(t.neighbors(0).empty());
    CHECK(t.neighbor_nodes(1).empty());
  }

  TEST_CASE("grid interior nodes have four lattice neighbors") {
    Topology t = grid();
    REQUIRE(t.size() == 15);
    // Oracle: lattice adjacency from row/column arithmetic.
    for (NodeId n = 0; n < 15; ++n) {
      const int r = static_cast<int>(n) / 5;
      const int c = static_cast<int>(n) % 5;
      std::vector<NodeId> expect;
      for (auto [dr, dc] : {std::pair{-1, 0}, {0, -1}, {0, 1}, {1, 0}}) {
        const int rr = r + dr;
        const int cc = c + dc;
        if (rr >= 0 && rr < 3 && cc >= 0 && cc < 5) expect.push_back(static_cast<NodeId>(rr * 5 + cc));
      }
      std::sort(expect.begin(), expect.end());
      CHECK(t.neighbor_nodes(n) == expect);
    }
    CHECK(t.neighbor_nodes(7).size() == 4);
    CHECK(t.gateways() == std::vector<NodeId>{14});
  }

  TEST_CASE("closed disc at exactly the transmission range") {
    Topology t({}, {at(0, 0, {1}), at(250, 0, {1}), at(500.0001, 0, {1})});
    CHECK(t.is_neighbor(0, 1));
    CHECK_FALSE(t.is_neighbor(1, 2));
  }

  TEST_CASE("links need a shared channel and are symmetric") {
    Topology t({}, {at(0, 0, {1, 2}), at(100, 0, {2, 3}), at(200, 0, {3}), at(100, 100, {4})});
    CHECK(t.shared_channels(0, 1) == std::vector<int>{2});
    CHECK(t.shared_channels(1, 2) == std::vector<int>{3});
    CHECK(t.shared_channels(0, 2).empty());
    CHECK_FALSE(t.is_neighbor(0, 3));
    for (NodeId a = 0; a < t.size(); ++a) {
      for (const Link& l : t.neighbors(a)) CHECK(t.has_link(l.to, l.from, l.channel));
    }
  }

  TEST_CASE("interferers by range and channel") {
    // Star around A (node 0): four same-channel nodes within range.
    Topology star({}, {at(500, 500, {2}), at(700, 500, {2}), at(500, 700, {2}), at(300, 500, {2}),
                       at(500, 300, {2}), at(500, 500 + 300, {5})});
    CHECK(star.interferers(0, 2) == std::vector<NodeId>{1, 2, 3, 4});

    Topology distinct({}, {at(0, 0, {1}), at(10, 0, {2}), at(20, 0, {3})});
    CHECK(distinct.interferers(0, 1).empty());
    CHECK(distinct.interferers(1, 2).empty());

    // 300 m apart with tx_range 250 and multiplier 2: interferer, not neighbor.
    Topology far({}, {at(0, 0, {1}), at(300, 0, {1})});
    CHECK(far.interference_range() == doctest::Approx(500.0));
    CHECK_FALSE(far.is_neighbor(0, 1));
    CHECK(far.interferers(0, 1) == std::vector<NodeId>{1});
    CHECK(far.within_interference(0, 1));
  }

  TEST_CASE("neighbors are interferers on every shared channel") {
    auto spec = topology_preset("semirandom20");
    REQUIRE(spec);
    Topology t(spec->params, spec->nodes);
    for (NodeId a = 0; a < t.size(); ++a) {
      for (const Link& l : t.neighbors(a)) {
        const auto inter = t.interferers(a, l.channel);
        CHECK(std::find(inter.begin(), inter.end(), l.to) != inter.end());
      }
    }
  }

  TEST_CASE("invalid node configs are rejected") {
    CHECK_THROWS_AS(Topology({}, {at(0, 0, {})}), TopologyError);
    CHECK_THROWS_AS(Topology({}, {at(0, 0, {1, 1})}), TopologyError);
    CHECK_THROWS_AS(Topology({}, {at(0, 0, {1, 2, 3, 4})}), TopologyError);
  }

  TEST_CASE("rebuild reports link deltas and bumps the version") {
    Topology t({}, {at(0, 0, {1}), at(400, 0, {1})});
    const auto v0 = t.version();
    CHECK(t.rebuild_links().empty());
    CHECK(t.version() == v0);
    t.set_position(1, {200, 0});
    const LinkDelta d = t.rebuild_links();
    CHECK(d.appeared.size() == 2);
    CHECK(d.vanished.empty());
    CHECK(t.version() == v0 + 1);
    t.set_position(1, {260, 0});
    CHECK(t.rebuild_links().vanished.size() == 2);
  }
}

TEST_SUITE("mobility") {
  TEST_CASE("zero speed leaves nodes in place") {
    Topology t({}, {at(0, 0, {1}), at(200, 0, {1})});
    RngStream rng(1, "mobility");
    RandomWaypoint w({0.0, 0.0, SimTime::from_us(100'000)}, {true, true}, t, rng);
    for (int k = 1; k <= 50; ++k) CHECK(w.tick(SimTime::from_us(k * 100'000), t, rng).empty());
    CHECK(t.position(0) == Position{0, 0});
    CHECK(t.position(1) == Position{200, 0});
  }

  TEST_CASE("one tick moves speed times tick toward the target") {
    Topology t({}, {at(500, 500, {1})});
    RngStream rng(3, "mobility");
    RandomWaypoint w({10.0, 0.0, SimTime::from_us(100'000)}, {true}, t, rng);
    const Position target = w.state(0).target;
    const double before = distance({500, 500}, target);
    REQUIRE(before > 1.0);
    w.tick(SimTime::from_us(100'000), t, rng);
    CHECK(distance({500, 500}, t.position(0)) == doctest::Approx(1.0));
    CHECK(distance(t.position(0), target) == doctest::Approx(before - 1.0));
  }

  TEST_CASE("approaching node gains a link at the predicted tick") {
    Topology t({}, {at(0, 0, {1}), at(999, 999, {1})});
    RngStream rng(11, "mobility");
    RandomWaypoint w({10.0, 0.0, SimTime::from_us(100'000)}, {true, false}, t, rng);
    // Park the static node on the mover's target so the mover heads straight at it.
    const Position target = w.state(0).target;
    t.set_position(1, target);
    t.rebuild_links();
    const double d0 = distance(t.position(0), target);
    REQUIRE(d0 > 300.0);
    // Oracle: straight-line closing at 1 m per tick.
    const int expected = static_cast<int>(std::ceil(d0 - 250.0 - 1e-9));
    int appeared_at = -1;
    for (int k = 1; k <= expected + 5 && appeared_at < 0; ++k) {
      if (!w.tick(SimTime::from_us(k * 100'000), t, rng).appeared.empty()) appeared_at = k;
    }
    CHECK(appeared_at == expected);
  }

  TEST_CASE("static nodes never move") {
    Topology t({}, {at(100, 100, {1}), at(300, 300, {1})});
    RngStream rng(5, "mobility");
    RandomWaypoint w({30.0, 0.0, SimTime::from_us(100'000)}, {false, true}, t, rng);
    for (int k = 1; k <= 200; ++k) w.tick(SimTime::from_us(k * 100'000), t, rng);
    CHECK(t.position(0) == Position{100, 100});
    CHECK_FALSE(t.position(1) == Position{300, 300});
    CHECK(t.position(1).x >= 0.0);
    CHECK(t.position(1).x <= 1000.0);
  }
}
