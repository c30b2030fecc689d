#include <cmath>
#include <map>

#include "antmesh/pheromone.hpp"
#include "antmesh/rng.hpp"
#include "doctest.h"

using namespace antmesh;

TEST_SUITE("pheromone") {
  TEST_CASE("new columns are uniform and sum to one") {
    PheromoneTable t({4, 2, 9, 2});
    CHECK(t.neighbors() == std::vector<NodeId>{2, 4, 9});
    t.ensure_destination(7);
    for (const auto& e : t.column(7)) CHECK(e.p == doctest::Approx(1.0 / 3));
    CHECK(t.column_sum(7) == doctest::Approx(1.0));
    CHECK(t.column(8).empty());
  }

  TEST_CASE("two-entry reinforcement") {
    PheromoneTable t({1, 2});
    t.ensure_destination(100);
    REQUIRE(t.reinforce(100, 1, 0.5));
    CHECK(t.probability(100, 1) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(t.probability(100, 2) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  TEST_CASE("three-entry reinforcement") {
    // From uniform thirds, dp 0.5 on 1 then 1/9 on 2 gives {0.5, 0.3, 0.2}.
    PheromoneTable t({1, 2, 3});
    t.ensure_destination(9);
    t.reinforce(9, 1, 0.5);
    t.reinforce(9, 2, 1.0 / 9);
    CHECK(t.probability(9, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.probability(9, 2) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(t.probability(9, 3) == doctest::Approx(0.2).epsilon(1e-12));
    REQUIRE(t.reinforce(9, 1, 0.5));
    CHECK(t.probability(9, 1) == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
    CHECK(t.probability(9, 2) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(t.probability(9, 3) == doctest::Approx(0.2 / 1.5).epsilon(1e-12));
    CHECK(std::abs(t.column_sum(9) - 1.0) < 1e-12);
  }

  TEST_CASE("zero reinforcement is the identity") {
    PheromoneTable t({1, 2, 3});
    t.ensure_destination(9);
    t.reinforce(9, 2, 0.7);
    const auto before = t.column(9);
    t.reinforce(9, 3, 0.0);
    const auto after = t.column(9);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i].p == after[i].p);
  }

  TEST_CASE("reinforcing a non-neighbor is refused") {
    PheromoneTable t({1, 2});
    CHECK_FALSE(t.reinforce(9, 5, 0.5));
    CHECK_FALSE(t.has_destination(9));
  }

  TEST_CASE("monotone reinforcement") {
    RngStream r(3, "mono");
    PheromoneTable t({1, 2, 3, 4});
    t.ensure_destination(50);
    for (int i = 0; i < 2000; ++i) {
      const NodeId via = static_cast<NodeId>(1 + r.index(4));
      const double dp = r.uniform(0.01, 1.0);
      const auto before = t.column(50);
      t.reinforce(50, via, dp);
      const auto after = t.column(50);
      for (std::size_t k = 0; k < before.size(); ++k) {
        if (before[k].via == via) {
          if (before[k].p < 1.0) REQUIRE(after[k].p > before[k].p);
        } else if (before[k].p > 0.0) {
          REQUIRE(after[k].p < before[k].p);
        }
      }
    }
  }

  TEST_CASE("neighbor churn keeps columns normalized") {
    PheromoneTable t({1, 2});
    t.ensure_destination(9);
    t.reinforce(9, 1, 1.0);
    t.add_neighbor(3);
    CHECK(t.neighbors().size() == 3);
    CHECK(std::abs(t.column_sum(9) - 1.0) < 1e-12);
    CHECK(t.probability(9, 3) > 0.0);
    t.remove_neighbor(1);
    CHECK(std::abs(t.column_sum(9) - 1.0) < 1e-12);
    t.set_neighbors({});
    CHECK(t.column(9).empty());
    t.set_neighbors({5, 6});
    CHECK(std::abs(t.column_sum(9) - 1.0) < 1e-12);
    CHECK(t.probability(9, 5) == doctest::Approx(0.5));
  }

  TEST_CASE("transition rule edge cases") {
    const std::vector<PheromoneEntry> col{{10, 0.7}, {20, 0.3}};
    const std::vector<NodeId> none;
    for (double u : {0.0, 0.3, 0.99999}) CHECK(choose_next_hop(col, none, 1.0, u, 0.9) == NodeId{10});
    // Exploring: v below 0.7 picks 10, above picks 20.
    CHECK(choose_next_hop(col, none, 0.0, 0.5, 0.69) == NodeId{10});
    CHECK(choose_next_hop(col, none, 0.0, 0.5, 0.71) == NodeId{20});
    const std::vector<NodeId> no10{10};
    CHECK(choose_next_hop(col, no10, 1.0, 0.1, 0.1) == NodeId{20});
    const std::vector<NodeId> both{10, 20};
    CHECK_FALSE(choose_next_hop(col, both, 0.8, 0.1, 0.1));
    // Ties go to the lowest id.
    const std::vector<PheromoneEntry> tie{{30, 0.5}, {20, 0.5}};
    CHECK(choose_next_hop(tie, none, 1.0, 0.0, 0.0) == NodeId{20});
  }

  TEST_CASE("exploration over a uniform column is uniform") {
    PheromoneTable t({1, 2, 3, 4});
    t.ensure_destination(9);
    RngStream r(17, "uniform-choice");
    std::map<NodeId, int> counts;
    const int n = 200'000;
    for (int i = 0; i < n; ++i) ++counts[*next_hop(t, 9, {}, 0.0, r)];
    for (auto& [via, c] : counts) CHECK(static_cast<double>(c) / n == doctest::Approx(0.25).epsilon(0.02));
  }

  TEST_CASE("p0 = 0.8 picks the best entry with probability 0.94") {
    const std::vector<PheromoneEntry> col{{1, 0.7}, {2, 0.3}};
    RngStream r(29, "mc");
    const int n = 1'000'000;
    int best = 0;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform();
      const double v = r.uniform();
      best += *choose_next_hop(col, {}, 0.8, u, v) == 1;
    }
    CHECK(std::abs(static_cast<double>(best) / n - 0.94) <= 0.002);
  }
}
