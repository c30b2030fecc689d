#include <vector>

#include "antmesh/mac.hpp"
#include "antmesh/presets.hpp"
#include "doctest.h"

using namespace antmesh;

namespace {

NodeConfig at(double x, double y, std::vector<int> channels) {
  NodeConfig n;
  n.pos = {x, y};
  for (int c : channels) n.radios.push_back(Radio{c, 2e6});
  return n;
}

Packet data(std::uint64_t id, std::uint32_t bits = 4096) {
  Packet p;
  p.id = id;
  p.size_bits = bits;
  return p;
}

Packet ant(PacketKind kind, std::uint64_t id) {
  Packet p;
  p.kind = kind;
  p.id = id;
  p.size_bits = ant_size_bits(2);
  p.payload = SmartAnt{};
  return p;
}

struct TxRecord {
  NodeId tx;
  NodeId rx;
  int channel;
  std::uint64_t id;
  std::int64_t start;
  std::int64_t end;
};

// A MAC over a fixed topology that logs every transmission and delivery.
struct Harness {
  Simulator sim;
  Topology topo;
  RngStream loss;
  std::vector<TxRecord> tx;
  std::vector<std::pair<std::uint64_t, std::int64_t>> delivered;  // id, time
  std::vector<std::pair<std::uint64_t, DropCause>> dropped;
  Mac mac;

  Harness(std::vector<NodeConfig> nodes, MacConfig cfg, TopologyParams params = {})
      : topo(params, std::move(nodes)),
        loss(1, "loss"),
        mac(cfg, sim, topo, loss,
            Mac::Hooks{[this](NodeId, NodeId, int, Packet p) { delivered.emplace_back(p.id, sim.now().us()); },
                       [this](NodeId, const Packet& p, DropCause c) { dropped.emplace_back(p.id, c); },
                       [this](NodeId a, NodeId b, int ch, const Packet& p, SimTime d) {
                         tx.push_back({a, b, ch, p.id, sim.now().us(), (sim.now() + d).us()});
                       }}) {}
};

MacConfig lossless() {
  MacConfig c;
  c.p_fail = 0.0;
  return c;
}

}  // namespace

TEST_SUITE("mac") {
  TEST_CASE("overhead from the frame constants") {
    CHECK(mac_overhead(MacConstants{0, 0, 0, 0, 0}) == 0);
    MacConstants c;
    CHECK(mac_overhead(c) == 352 + 304 + 3 * 10 + 50 + 304);
    CHECK(mac_overhead(c) == 1040);
    MacConstants d = c;
    d.t_sifs *= 2;
    CHECK(mac_overhead(d) - mac_overhead(c) == 30);
    CHECK(mac_overhead(c, false) == 1040 - 352 - 304);
  }

  TEST_CASE("expected transmission time") {
    MacConstants c;
    CHECK(expected_tx_time(4096, 2e6, 1, c) == 1040 + 2048);
    CHECK(expected_tx_time(4096, 2e6, 1, c) == 3088);
    CHECK(expected_tx_time(4096, 2e6, 2, c) == 6176);
    CHECK(expected_tx_time(0, 2e6, 3, c) == 3 * 1040);
    CHECK_THROWS(expected_tx_time(4096, 0.0, 1, c));
    CHECK_THROWS(expected_tx_time(4096, 2e6, 0, c));
  }

  TEST_CASE("attempt sampling") {
    RngStream r(9, "loss");
    for (int i = 0; i < 1000; ++i) {
      const auto a = sample_n_tx(r, 0.0, 7);
      REQUIRE(a.attempts == 1);
      REQUIRE(a.delivered);
    }
    const auto dead = sample_n_tx(r, 1.0, 7);
    CHECK(dead.attempts == 7);
    CHECK_FALSE(dead.delivered);

    // Oracle: capped geometric mean sum_{k<7} 0.1^k = 1.1111...
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += sample_n_tx(r, 0.1, 7).attempts;
    const double mean = sum / n;
    CHECK(mean >= 1.10);
    CHECK(mean <= 1.12);
  }

  TEST_CASE("radio queue lanes and capacity") {
    RadioQueue q(20);
    for (std::uint64_t i = 0; i < 20; ++i) {
      QueuedFrame f{data(i), 1};
      REQUIRE(q.push(f));
    }
    QueuedFrame extra{data(99), 1};
    CHECK_FALSE(q.push(extra));
    CHECK(q.data_size() == 20);
    QueuedFrame bsa{ant(PacketKind::bsa, 100), 1};
    CHECK(q.push(bsa));
    QueuedFrame fsa{ant(PacketKind::fsa, 101), 1};
    CHECK(q.push(fsa));
    // Control leaves first, FIFO within each lane.
    CHECK(q.pop()->packet.id == 100);
    CHECK(q.pop()->packet.id == 101);
    CHECK(q.pop()->packet.id == 0);
    CHECK(q.pop()->packet.id == 1);
  }

  TEST_CASE("idle link transmits immediately for E[T]") {
    Harness h({at(0, 0, {1}), at(200, 0, {1})}, lossless());
    h.mac.enqueue(0, 1, 1, data(1));
    REQUIRE(h.tx.size() == 1);
    CHECK(h.tx[0].start == 0);
    h.sim.run_until(SimTime::from_seconds(1));
    REQUIRE(h.delivered.size() == 1);
    CHECK(h.delivered[0].second == 3088);
  }

  TEST_CASE("overflow drops data but never control") {
    Harness h({at(0, 0, {1}), at(200, 0, {1})}, lossless());
    int accepted = 0;
    for (std::uint64_t i = 0; i < 25; ++i) accepted += h.mac.enqueue(0, 1, 1, data(i));
    // One frame went on the air straight away, 20 wait, the rest overflow.
    CHECK(accepted == 21);
    CHECK(h.dropped.size() == 4);
    for (auto& [id, cause] : h.dropped) CHECK(cause == DropCause::queue_overflow);
    CHECK(h.mac.enqueue(0, 1, 1, ant(PacketKind::bsa, 500)));
    CHECK(h.mac.control_queue(0, 1) == 1);
    h.sim.run_until(SimTime::from_seconds(1));
    // The ant overtakes the 20 queued data frames.
    REQUIRE(h.tx.size() == 22);
    CHECK(h.tx[1].id == 500);
  }

  TEST_CASE("interfering links serialize, other channels overlap") {
    SUBCASE("same channel") {
      Harness h({at(0, 0, {1}), at(200, 0, {1}), at(400, 0, {1}), at(600, 0, {1})}, lossless());
      h.mac.enqueue(0, 1, 1, data(1));
      h.mac.enqueue(2, 1, 3, data(2));
      h.sim.run_until(SimTime::from_seconds(1));
      REQUIRE(h.tx.size() == 2);
      CHECK(h.tx[1].start == h.tx[0].end);
    }
    SUBCASE("different channels") {
      Harness h({at(0, 0, {1}), at(200, 0, {1}), at(400, 0, {2}), at(600, 0, {2})}, lossless());
      h.mac.enqueue(0, 1, 1, data(1));
      h.mac.enqueue(2, 2, 3, data(2));
      h.sim.run_until(SimTime::from_seconds(1));
      REQUIRE(h.tx.size() == 2);
      CHECK(h.tx[0].start == 0);
      CHECK(h.tx[1].start == 0);
    }
    SUBCASE("out of interference range") {
      Harness h({at(0, 0, {1}), at(100, 0, {1}), at(900, 900, {1}), at(1000, 900, {1})}, lossless());
      h.mac.enqueue(0, 1, 1, data(1));
      h.mac.enqueue(2, 1, 3, data(2));
      CHECK(h.tx.size() == 2);
    }
  }

  TEST_CASE("broadcast reaches every same-channel neighbor") {
    Harness h({at(0, 0, {1, 2}), at(200, 0, {1}), at(0, 200, {1}), at(100, 100, {2}), at(900, 900, {1})},
              lossless());
    Packet hello;
    hello.kind = PacketKind::hsa;
    hello.id = 7;
    hello.size_bits = hello_size_bits(0);
    hello.payload = HelloPayload{};
    h.mac.broadcast(0, 1, hello);
    h.sim.run_until(SimTime::from_seconds(1));
    CHECK(h.delivered.size() == 2);
    REQUIRE(h.tx.size() == 1);
    CHECK(h.tx[0].end - h.tx[0].start == 50 + airtime_us(hello_size_bits(0), 2e6));
  }

  TEST_CASE("all attempts failing is a mac loss") {
    MacConfig c;
    c.p_fail = 1.0;
    Harness h({at(0, 0, {1}), at(200, 0, {1})}, c);
    h.mac.enqueue(0, 1, 1, data(1));
    h.sim.run_until(SimTime::from_seconds(1));
    CHECK(h.delivered.empty());
    REQUIRE(h.dropped.size() == 1);
    CHECK(h.dropped[0].second == DropCause::mac_loss);
    CHECK(h.tx[0].end - h.tx[0].start == 7 * 3088);
  }

  TEST_CASE("random load on the grid keeps the MAC invariants") {
    auto spec = topology_preset("grid15");
    REQUIRE(spec);
    spec->params.interference_multiplier = 1.2;
    MacConfig cfg;
    Harness h(spec->nodes, cfg, spec->params);
    RngStream r(21, "test-load");
    std::uint64_t id = 0;
    for (int k = 0; k < 400; ++k) {
      h.sim.schedule(SimTime::from_us(k * 2500), EventKind::packet_arrival, 0, 0, [&] {
        for (int j = 0; j < 3; ++j) {
          const NodeId a = static_cast<NodeId>(r.index(15));
          const auto nb = h.topo.neighbors(a);
          const Link l = nb[r.index(nb.size())];
          if (r.uniform() < 0.3) {
            h.mac.enqueue(a, l.channel, l.to, ant(PacketKind::fsa, id++));
          } else {
            h.mac.enqueue(a, l.channel, l.to, data(id++));
          }
        }
      });
    }
    h.sim.run_until(SimTime::from_seconds(30));
    REQUIRE(h.tx.size() > 500);
    // Mutual exclusion: conflicting transmissions on one channel never overlap.
    auto near = [&](NodeId a, NodeId b) { return h.topo.within_interference(a, b); };
    for (std::size_t i = 0; i < h.tx.size(); ++i) {
      for (std::size_t j = i + 1; j < h.tx.size(); ++j) {
        const TxRecord& a = h.tx[i];
        const TxRecord& b = h.tx[j];
        if (a.channel != b.channel || a.end <= b.start || b.end <= a.start) continue;
        const bool conflict = near(a.tx, b.tx) || near(a.tx, b.rx) || near(a.rx, b.tx) || near(a.rx, b.rx);
        REQUIRE_FALSE(conflict);
      }
    }
    // Each transmission lasts a whole number of E[T] attempts for its frame.
    for (const TxRecord& t : h.tx) {
      const std::int64_t d = t.end - t.start;
      const std::int64_t ctl = expected_tx_time(ant_size_bits(2), 2e6, 1, cfg.constants, false);
      const std::int64_t dat = expected_tx_time(4096, 2e6, 1, cfg.constants, true);
      CHECK(((d % ctl == 0 && d / ctl <= 7) || (d % dat == 0 && d / dat <= 7)));
    }
    CHECK(h.mac.data_in_flight() == 0);
  }
}
