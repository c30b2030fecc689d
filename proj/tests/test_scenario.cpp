#include "antmesh/experiment.hpp"
#include "antmesh/presets.hpp"
#include "antmesh/scenario.hpp"
#include "doctest.h"

using namespace antmesh;

namespace {

FlowSpec flow_to(NodeId dst) {
  FlowSpec f;
  f.id = "a";
  f.src = 3;
  f.dst = dst;
  return f;
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("empty text gives the defaults") {
    const Scenario s = parse_scenario("");
    CHECK(s.name == "default");
    CHECK(s.topology == *topology_preset("grid15"));
    CHECK(s.routing.algorithm == RoutingAlgorithm::antmesh);
    CHECK(s.routing.params.p0 == 0.8);
    CHECK(s.flows.empty());
    CHECK(s.run.seeds == std::vector<std::uint64_t>{1});
  }

  TEST_CASE("errors name the offending line") {
    try {
      parse_scenario("name = x\n\n[routing]\np0 = 1.3\n");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_scenario("[bogus]\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[routing]\nwhatever = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[routing]\nalgorithm = aodv\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[traffic]\nflow = a dst=3\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[sweep]\nhorizon = 1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("name = x\npreset = grid15\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[topology]\nnode = 1 0 0 1\n"), ConfigError);
  }

  TEST_CASE("a preset line starts from that preset") {
    const Scenario s = parse_scenario("preset = fig4-learning\n[run]\nseeds = 1..3\n");
    const Scenario p = *scenario_preset("fig4-learning");
    CHECK(s.flows == p.flows);
    CHECK(s.load == p.load);
    CHECK(s.sweep == p.sweep);
    CHECK(s.run.seeds == std::vector<std::uint64_t>{1, 2, 3});
  }

  TEST_CASE("traffic and load sections replace the preset lists") {
    const Scenario s = parse_scenario(
        "preset = fig4-learning\n[traffic]\nflow = x src=2 dst=14 rate=5 start=1 size=256\n"
        "[load]\nevent = 3 stop x\n");
    REQUIRE(s.flows.size() == 1);
    CHECK(s.flows[0].id == "x");
    CHECK(s.flows[0].pkt_bits == 2048);
    CHECK(s.flows[0].start == SimTime::from_seconds(1));
    REQUIRE(s.load.size() == 1);
    CHECK_FALSE(s.load[0].add);
    CHECK_NOTHROW(validate(s));
  }

  TEST_CASE("every preset validates and round-trips") {
    for (const auto& info : preset_list()) {
      CAPTURE(info.name);
      const Scenario s = *scenario_preset(info.name);
      CHECK_NOTHROW(validate(s));
      const std::string text = serialize_scenario(s);
      const Scenario back = parse_scenario(text);
      CHECK(back == s);
      CHECK(serialize_scenario(back) == text);
    }
  }

  TEST_CASE("explicit nodes round-trip") {
    const Scenario s = parse_scenario(
        "[topology]\nnode = 0 0 0 1,2 gateway\nnode = 1 200 0 2\nnode = 2 400 0 2,3\n"
        "[traffic]\nflow = a src=2 dst=random_gateway rate=7\n");
    REQUIRE(s.topology.nodes.size() == 3);
    CHECK(s.topology.nodes[0].gateway);
    CHECK_FALSE(s.flows[0].dst);
    CHECK(parse_scenario(serialize_scenario(s)) == s);
    CHECK_NOTHROW(validate(s));
  }

  TEST_CASE("validation catches cross-field problems") {
    Scenario s = *scenario_preset("grid15");
    s.flows.push_back(flow_to(99));
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.flows = {flow_to(14)};
    s.load = {{SimTime::from_seconds(2), true, {"missing"}}};
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.load.clear();
    s.run.warmup = s.run.horizon;
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.run.warmup = SimTime::zero();
    s.topology.nodes[0].radios.clear();
    CHECK_THROWS_AS(validate(s), ConfigError);
  }

  TEST_CASE("seed lists") {
    CHECK(parse_seed_list("1..4") == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(parse_seed_list("7") == std::vector<std::uint64_t>{7});
    CHECK(parse_seed_list("3,1,9") == std::vector<std::uint64_t>{3, 1, 9});
    CHECK_THROWS_AS(parse_seed_list("5..2"), ConfigError);
    CHECK_THROWS_AS(parse_seed_list(""), ConfigError);
    CHECK_THROWS_AS(parse_seed_list("a"), ConfigError);
  }

  TEST_CASE("settings and sweep aliases") {
    Scenario s = *scenario_preset("semirandom20");
    apply_setting(s, "flow_rate", "25");
    for (const auto& f : s.flows) CHECK(f.rate_pps == 25.0);
    apply_setting(s, "routing", "hopant");
    CHECK(s.routing.algorithm == RoutingAlgorithm::hopant);
    apply_setting(s, "speed", "12.5");
    CHECK(s.mobility.speed_mps == 12.5);
    apply_setting(s, "mac.buffer", "8");
    CHECK(s.mac.buffer == 8);
    CHECK_THROWS_AS(apply_setting(s, "p0", "-0.1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(s, "nonsense", "1"), ConfigError);
    CHECK(flow_summary(s) == "4@25");
  }

  TEST_CASE("sweep expansion is a cartesian product, first axis slowest") {
    const Scenario s = *scenario_preset("fig5-saturation");
    const auto points = expand_sweep(s);
    REQUIRE(points.size() == 10);
    CHECK(points[0].settings == std::vector<std::pair<std::string, std::string>>{{"flow_rate", "10"},
                                                                                  {"routing", "antmesh"}});
    CHECK(points[1].scenario.routing.algorithm == RoutingAlgorithm::hopant);
    CHECK(points[9].scenario.flows[0].rate_pps == 200.0);
    CHECK(points[9].scenario.sweep.empty());

    const auto replaced = expand_sweep(s, {{"routing", {"static"}}, {"p0", {"0", "1"}}});
    CHECK(replaced.size() == 10);
    CHECK(replaced.back().scenario.routing.algorithm == RoutingAlgorithm::static_min_hop);
    CHECK(replaced.back().scenario.routing.params.p0 == 1.0);
    CHECK(expand_sweep(*scenario_preset("grid15")).size() == 1);
  }
}
