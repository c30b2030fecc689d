#include <algorithm>

#include "antmesh/experiment.hpp"
#include "antmesh/presets.hpp"
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

namespace {

Scenario shortened(std::string_view preset, double horizon_s) {
  Scenario s = *scenario_preset(preset);
  s.run.horizon = SimTime::from_seconds(horizon_s);
  s.run.warmup = SimTime::from_seconds(horizon_s / 4);
  s.load.erase(std::remove_if(s.load.begin(), s.load.end(), [&](const LoadAction& a) { return a.at >= s.run.horizon; }),
               s.load.end());
  s.sweep.clear();
  return s;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("same seed, same trace and same row") {
    for (const auto& info : preset_list()) {
      CAPTURE(info.name);
      const Scenario s = shortened(info.name, 3.0);
      const RunOutput a = run_single(s, 7, {true, false});
      const RunOutput b = run_single(s, 7, {true, false});
      REQUIRE(a.ok());
      CHECK(a.trace == b.trace);
      CHECK(a.ledger == b.ledger);
      CHECK(csv_row(a.info, a.ledger) == csv_row(b.info, b.ledger));
    }
  }

  TEST_CASE("different seeds differ") {
    const Scenario s = shortened("semirandom20", 3.0);
    CHECK(run_single(s, 1, {true, false}).trace != run_single(s, 2, {true, false}).trace);
  }

  TEST_CASE("parallel jobs reproduce the serial reference") {
    Scenario s = shortened("fig4-learning", 4.0);
    s.sweep = {{"ant_rate", {"10", "40"}}};
    const auto points = expand_sweep(s);
    const auto jobs = plan_jobs(points.size(), {1, 2, 3});
    const auto serial = run_jobs_serial(points, jobs, {true, false});
    const auto parallel = run_jobs_parallel(points, jobs, {true, false}, 3);
    REQUIRE(serial.size() == 6);
    CHECK(to_csv(serial) == to_csv(parallel));
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].trace == parallel[i].trace);
  }

  TEST_CASE("jobs are seed-major") {
    const auto jobs = plan_jobs(2, {5, 6});
    REQUIRE(jobs.size() == 4);
    CHECK((jobs[0].seed == 5 && jobs[0].point == 0));
    CHECK((jobs[1].seed == 5 && jobs[1].point == 1));
    CHECK((jobs[2].seed == 6 && jobs[2].point == 0));
  }

  TEST_CASE("one csv row per seed") {
    Scenario s = shortened("fig4a-p0sweep", 2.0);
    const auto points = expand_sweep(s);
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::string csv = to_csv(run_jobs_serial(points, plan_jobs(points.size(), seeds)));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
    CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  }

  TEST_CASE("a failing run reports an error instead of a row") {
    Scenario s = shortened("grid15", 2.0);
    s.flows = {flow_to(99)};
    const RunOutput r = run_single(s, 1);
    CHECK_FALSE(r.ok());
    CHECK(to_csv({r}) == csv_header() + "\n");
  }
}
