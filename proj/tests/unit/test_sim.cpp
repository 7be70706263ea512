// Copyright 2026 The btsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "btsim/sim/csma_mac.hpp"
#include "btsim/sim/error.hpp"
#include "btsim/sim/medium.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"
#include "btsim/sim/topology.hpp"
#include "doctest.h"

using namespace btsim;

namespace {

Frame adv_frame(NodeId tx, ChannelId ch, SimTime start, std::uint32_t len = 40) {
  Frame f;
  f.transmitter = tx;
  f.channel = ch;
  f.kind = FrameKind::kMeshAdv;
  f.length_bytes = len;
  f.start = start;
  return f;
}

std::map<NodeId, Reception> outcome_map(const std::vector<ReceptionOutcome>& v) {
  std::map<NodeId, Reception> m;
  for (const auto& o : v) m[o.node] = o.result;
  return m;
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("event at time zero runs first") {
    Simulator sim;
    std::vector<int> order;
    sim.schedule(0, [&] { order.push_back(0); });
    sim.schedule(1, [&] { order.push_back(1); });
    CHECK(sim.run_all() == 2);
    CHECK(order == std::vector<int>{0, 1});
  }

  TEST_CASE("equal timestamps execute in insertion order") {
    Simulator sim;
    std::vector<int> order;
    for (int i = 0; i < 50; ++i) sim.schedule(5, [&order, i] { order.push_back(i); });
    sim.run_all();
    std::vector<int> expected(50);
    std::iota(expected.begin(), expected.end(), 0);
    CHECK(order == expected);
  }

  TEST_CASE("scheduling in the past throws") {
    Simulator sim;
    sim.schedule(4, [] {});
    sim.run(4);
    CHECK(sim.now() == 4);
    CHECK_THROWS_AS(sim.schedule(3, [] {}), SimulationError);
    CHECK_NOTHROW(sim.schedule(4, [] {}));
  }

  TEST_CASE("run on an empty queue advances the clock") {
    Simulator sim;
    CHECK(sim.run(100) == 0);
    CHECK(sim.now() == 100);
  }

  TEST_CASE("run executes events up to and including the limit") {
    Simulator sim;
    int hits = 0;
    sim.schedule(50, [&] { ++hits; });
    sim.schedule(100, [&] { ++hits; });
    sim.schedule(101, [&] { ++hits; });
    CHECK(sim.run(100) == 2);
    CHECK(hits == 2);
    CHECK(sim.now() == 100);
    CHECK(sim.pending() == 1);
  }

  TEST_CASE("cancelled events never run") {
    Simulator sim;
    int hits = 0;
    const EventHandle a = sim.schedule(10, [&] { ++hits; });
    sim.schedule(20, [&] { ++hits; });
    CHECK(sim.cancel(a));
    CHECK_FALSE(sim.cancel(a));
    CHECK(sim.pending() == 1);
    sim.run_all();
    CHECK(hits == 1);
    CHECK_FALSE(sim.cancel(a));
    CHECK_FALSE(sim.cancel(12345));
  }

  TEST_CASE("clock is monotone and events never see a past schedule") {
    Simulator sim;
    Rng rng(7);
    SimTime last = 0;
    bool monotone = true;
    std::function<void()> spawn;
    int budget = 2000;
    spawn = [&] {
      if (sim.now() < last) monotone = false;
      last = sim.now();
      if (--budget <= 0) return;
      sim.schedule_in(rng.uniform(0, 500), spawn);
      if (rng.bernoulli(0.3)) sim.schedule_in(rng.uniform(0, 500), spawn);
    };
    sim.schedule(0, spawn);
    sim.run_all();
    CHECK(monotone);
  }

  TEST_CASE("identical seeds replay bit-identical traces") {
    auto replay = [](std::uint64_t seed) {
      Simulator sim;
      std::vector<TraceEntry> trace;
      sim.record_trace(&trace);
      Rng rng(seed);
      std::function<void()> tick;
      int budget = 500;
      tick = [&] {
        if (--budget > 0) sim.schedule_in(rng.uniform(0, 10'000), tick);
        if (rng.bernoulli(0.5)) sim.schedule_in(rng.uniform(0, 10'000), [] {});
      };
      sim.schedule(0, tick);
      sim.run(sec(100));
      return std::make_pair(trace, sim.trace_digest());
    };
    const auto a = replay(42);
    const auto b = replay(42);
    const auto c = replay(43);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.second != c.second);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("derived streams are reproducible and distinct") {
    Rng a = Rng::derive(1, {5, 6});
    Rng b = Rng::derive(1, {5, 6});
    Rng c = Rng::derive(1, {6, 5});
    Rng d = Rng::derive(2, {5, 6});
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());
  }

  TEST_CASE("uniform stays inside closed bounds and reaches both ends") {
    Rng rng(3);
    bool lo = false, hi = false;
    for (int i = 0; i < 10'000; ++i) {
      const auto v = rng.uniform(10, 13);
      REQUIRE(v >= 10);
      REQUIRE(v <= 13);
      lo |= v == 10;
      hi |= v == 13;
    }
    CHECK(lo);
    CHECK(hi);
    CHECK(rng.uniform(9, 9) == 9);
    for (int i = 0; i < 1000; ++i) {
      const double u = rng.uniform01();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
    }
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_SUITE("topology") {
  TEST_CASE("line and full mesh pair counts") {
    CHECK(TopologyMatrix::line(10).pair_count() == 9);
    CHECK(TopologyMatrix::full_mesh(10).pair_count() == 45);
  }

  TEST_CASE("matrix is symmetric and irreflexive") {
    TopologyMatrix m(5);
    m.connect(0, 3);
    m.connect(2, 2);
    CHECK(m.visible(0, 3));
    CHECK(m.visible(3, 0));
    CHECK_FALSE(m.visible(2, 2));
    CHECK(m.pair_count() == 1);
    m.disconnect(3, 0);
    CHECK_FALSE(m.visible(0, 3));
    CHECK_THROWS_AS(m.connect(0, 9), ConfigError);
  }

  TEST_CASE("line next hop and distances") {
    const auto line = TopologyMatrix::line(10);
    CHECK(line.next_hop(0, 9) == 1);
    CHECK(line.next_hop(9, 0) == 8);
    CHECK(line.next_hop(4, 4) == kBroadcastNode);
    const auto d = line.hop_distances(0);
    for (NodeId i = 0; i < 10; ++i) CHECK(d[i] == i);
    CHECK(line.connected());
    TopologyMatrix split(4);
    split.connect(0, 1);
    split.connect(2, 3);
    CHECK_FALSE(split.connected());
    CHECK(split.next_hop(0, 3) == kBroadcastNode);
  }

  TEST_CASE("union of relations") {
    const auto u = TopologyMatrix::line(4).united(TopologyMatrix::full_mesh(4));
    CHECK(u.pair_count() == 6);
    CHECK_THROWS_AS(TopologyMatrix::line(3).united(TopologyMatrix::line(4)), ConfigError);
  }
}

TEST_SUITE("medium") {
  TEST_CASE("airtime follows the link bit rate") {
    CHECK(airtime_of(FrameKind::kMeshAdv, 40) == 320);
    CHECK(airtime_of(FrameKind::kDot154Data, 40) == 1280);
    CHECK(airtime_of(FrameKind::kDot154Ack, 11) == 352);
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    CHECK_THROWS_AS(medium.transmit(adv_frame(0, 37, 0, 0)), SimulationError);
    sim.run(10);
    CHECK_THROWS_AS(medium.transmit(adv_frame(0, 37, 5)), SimulationError);
  }

  TEST_CASE("single frame on the listening channel is delivered") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    std::map<NodeId, Reception> out;
    SimTime seen_at = 0;
    medium.set_receive_handler(1, [&](const Frame&) { seen_at = sim.now(); });
    medium.transmit(adv_frame(0, 37, 100), [&](const Frame&, const auto& o) { out = outcome_map(o); });
    sim.run_all();
    CHECK(out.size() == 1);
    CHECK(out[1] == Reception::kDelivered);
    CHECK(seen_at == 100 + 320);
    CHECK(medium.tally(0).tx_original == 1);
    CHECK(medium.tally(1).rx == 1);
  }

  TEST_CASE("overlapping frames on one channel destroy each other") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(3), {}, 1);
    std::map<NodeId, Reception> a, b;
    medium.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { a = outcome_map(o); });
    medium.transmit(adv_frame(1, 37, 200), [&](const Frame&, const auto& o) { b = outcome_map(o); });
    sim.run_all();
    CHECK(a[2] == Reception::kCollided);
    CHECK(b[2] == Reception::kCollided);
    CHECK(a[1] == Reception::kNotListening);
    CHECK(b[0] == Reception::kNotListening);
    CHECK(medium.frames_delivered() == 0);
  }

  TEST_CASE("frames on different channels or disjoint windows do not collide") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(3), {}, 1);
    medium.set_fixed_channel(2, 38);
    std::map<NodeId, Reception> a, b, c;
    medium.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { a = outcome_map(o); });
    medium.transmit(adv_frame(1, 38, 100), [&](const Frame&, const auto& o) { b = outcome_map(o); });
    medium.transmit(adv_frame(1, 38, 420), [&](const Frame&, const auto& o) { c = outcome_map(o); });
    sim.run_all();
    CHECK(a[2] == Reception::kNotListening);
    CHECK(b[2] == Reception::kDelivered);
    CHECK(c[2] == Reception::kDelivered);
  }

  TEST_CASE("a collision at one receiver leaves a receiver with disjoint visibility unaffected") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::line(5), {}, 1);
    std::map<NodeId, Reception> a, b;
    medium.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { a = outcome_map(o); });
    medium.transmit(adv_frame(4, 37, 0), [&](const Frame&, const auto& o) { b = outcome_map(o); });
    medium.transmit(adv_frame(2, 37, 0));
    sim.run_all();
    CHECK(a[1] == Reception::kCollided);
    CHECK(b[3] == Reception::kCollided);

    Simulator sim2;
    Medium m2(sim2, TopologyMatrix::line(5), {}, 1);
    m2.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { a = outcome_map(o); });
    m2.transmit(adv_frame(4, 37, 0), [&](const Frame&, const auto& o) { b = outcome_map(o); });
    sim2.run_all();
    CHECK(a[1] == Reception::kDelivered);
    CHECK(b[3] == Reception::kDelivered);
  }

  TEST_CASE("interference matrix makes a hidden terminal collide") {
    auto run = [](bool hidden_interferes) {
      Simulator sim;
      TopologyMatrix vis(3);
      vis.connect(0, 1);
      vis.connect(1, 2);
      Medium medium(sim, vis, {}, 1);
      if (hidden_interferes) medium.set_interference(TopologyMatrix::full_mesh(3));
      Reception at2 = Reception::kDelivered;
      medium.transmit(adv_frame(0, 37, 0));
      medium.transmit(adv_frame(1, 37, 10), [&](const Frame&, const auto& o) { at2 = outcome_map(o)[2]; });
      sim.run_all();
      return at2;
    };
    CHECK(run(false) == Reception::kDelivered);
    CHECK(run(true) == Reception::kCollided);
  }

  TEST_CASE("a node transmitting cannot receive") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    Reception r = Reception::kDelivered;
    medium.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { r = outcome_map(o)[1]; });
    medium.transmit(adv_frame(1, 38, 100));
    sim.run_all();
    CHECK(r == Reception::kNotListening);
  }

  TEST_CASE("radio off or toggled mid-frame means not listening") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    medium.set_radio_enabled(1, false);
    CHECK_FALSE(medium.listening_channel(1, 0).has_value());
    Reception r1 = Reception::kDelivered, r2 = Reception::kDelivered;
    medium.transmit(adv_frame(0, 37, 0), [&](const Frame&, const auto& o) { r1 = outcome_map(o)[1]; });
    sim.schedule(100, [&] { medium.set_radio_enabled(1, true); });
    sim.run_all();
    CHECK(r1 == Reception::kNotListening);
    medium.transmit(adv_frame(0, 37, sim.now()), [&](const Frame&, const auto& o) { r2 = outcome_map(o)[1]; });
    sim.run_all();
    CHECK(r2 == Reception::kDelivered);
  }

  TEST_CASE("address filter and random loss") {
    Simulator sim;
    MediumConfig cfg;
    cfg.dot154_loss_probability = 1.0;
    Medium medium(sim, TopologyMatrix::full_mesh(3), cfg, 1);
    for (NodeId n = 0; n < 3; ++n) medium.set_fixed_channel(n, kDot154Channel);
    Frame f = adv_frame(0, kDot154Channel, 0);
    f.kind = FrameKind::kDot154Data;
    f.destination = 1;
    std::map<NodeId, Reception> out;
    medium.transmit(f, [&](const Frame&, const auto& o) { out = outcome_map(o); });
    sim.run_all();
    CHECK(out[1] == Reception::kLost);
    CHECK(out[2] == Reception::kFiltered);
  }

  TEST_CASE("scan rotation follows the dwell window") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    medium.set_scan_rotation(0, msec(30), 0);
    CHECK(medium.listening_channel(0, msec(0)) == 37);
    CHECK(medium.listening_channel(0, msec(45)) == 38);
    CHECK(medium.listening_channel(0, msec(75)) == 39);
    CHECK(medium.listening_channel(0, msec(95)) == 37);
    medium.set_scan_rotation(0, kNever);
    CHECK(medium.listening_channel(0, msec(75)) == 37);
    medium.set_scan_rotation(0, 0);
    CHECK(medium.listening_channel(0, msec(45)) == 37);
  }

  TEST_CASE("frame straddling a dwell boundary is not received") {
    Simulator sim;
    Medium medium(sim, TopologyMatrix::full_mesh(2), {}, 1);
    medium.set_scan_rotation(1, 1000, 0);
    Reception r = Reception::kDelivered;
    medium.transmit(adv_frame(0, 37, 900), [&](const Frame&, const auto& o) { r = outcome_map(o)[1]; });
    sim.run_all();
    CHECK(r == Reception::kNotListening);
  }

  TEST_CASE("scan phases differ across nodes under distinct sub-seeds") {
    int distinct = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Simulator sim;
      Medium medium(sim, TopologyMatrix::full_mesh(2), {}, seed);
      medium.set_scan_rotation(0, msec(30));
      medium.set_scan_rotation(1, msec(30));
      REQUIRE(medium.scan_phase(0) < msec(90));
      if (medium.scan_phase(0) != medium.scan_phase(1)) ++distinct;
    }
    CHECK(distinct >= 99);
  }

  TEST_CASE("conservation and airtime consistency over random traffic") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Simulator sim;
      Rng rng(seed);
      constexpr std::size_t n = 6;
      TopologyMatrix vis(n);
      for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
          if (rng.bernoulli(0.5)) vis.connect(a, b);
      Medium medium(sim, vis, {}, seed);
      for (NodeId v = 0; v < n; ++v) medium.set_scan_rotation(v, 700);
      bool aligned = true;
      std::uint64_t handler_rx = 0;
      for (NodeId v = 0; v < n; ++v) {
        medium.set_receive_handler(v, [&](const Frame& f) {
          ++handler_rx;
          if (sim.now() != f.end()) aligned = false;
        });
      }
      for (int i = 0; i < 300; ++i) {
        Frame f = adv_frame(static_cast<NodeId>(rng.uniform(0, n - 1)),
                            kAdvertisingChannels[rng.uniform(0, 2)], rng.uniform(0, 100'000),
                            static_cast<std::uint32_t>(rng.uniform(1, 40)));
        f.retransmission = rng.bernoulli(0.5);
        medium.transmit(f);
      }
      sim.run_all();
      std::uint64_t tx = 0, rx = 0;
      for (const auto& t : medium.tallies()) {
        tx += t.tx_original + t.tx_retransmission;
        rx += t.rx;
      }
      std::uint64_t logged_rx = 0;
      for (const auto& r : medium.frame_log()) logged_rx += r.delivered;
      CHECK(tx == 300);
      CHECK(medium.frames_transmitted() == 300);
      CHECK(medium.frame_log().size() == 300);
      CHECK(rx == medium.frames_delivered());
      CHECK(rx == logged_rx);
      CHECK(rx == handler_rx);
      CHECK(aligned);
    }
  }
}

TEST_SUITE("csma") {
  struct Fixture {
    Simulator sim;
    Medium medium;
    std::vector<std::unique_ptr<CsmaMac>> macs;
    std::vector<int> received;

    Fixture(TopologyMatrix vis, CsmaConfig cfg = {}, std::uint64_t seed = 1)
        : medium(sim, vis, {}, seed), received(vis.size(), 0) {
      for (NodeId v = 0; v < vis.size(); ++v) {
        medium.set_fixed_channel(v, kDot154Channel);
        macs.push_back(std::make_unique<CsmaMac>(sim, medium, v, cfg, Rng::derive(seed, {v})));
        CsmaMac* mac = macs.back().get();
        medium.set_receive_handler(v, [mac](const Frame& f) { mac->on_frame(f); });
        mac->set_receive_handler([this, v](NodeId, const std::any&) { ++received[v]; });
      }
    }
  };

  TEST_CASE("idle channel unicast is acked on the first attempt") {
    Fixture fx(TopologyMatrix::full_mesh(2));
    std::optional<TxReport> report;
    fx.macs[0]->send(1, 20, 7, false, [&](const TxReport& r) { report = r; });
    fx.sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kAcked);
    CHECK(report->attempts == 1);
    CHECK(fx.received[1] == 1);
    CHECK(fx.medium.tally(1).tx_original == 1);  // the ack
  }

  TEST_CASE("invisible destination fails after one plus four attempts") {
    TopologyMatrix vis(3);
    vis.connect(0, 1);
    Fixture fx(vis);
    std::optional<TxReport> report;
    fx.macs[0]->send(2, 20, 7, false, [&](const TxReport& r) { report = r; });
    fx.sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kFailed);
    CHECK(report->attempts == 5);
    CHECK(fx.medium.tally(0).tx_original == 1);
    CHECK(fx.medium.tally(0).tx_retransmission == 4);
  }

  TEST_CASE("broadcast completes without an ack") {
    Fixture fx(TopologyMatrix::full_mesh(3));
    std::optional<TxReport> report;
    fx.macs[0]->send(kBroadcastNode, 10, 1, false, [&](const TxReport& r) { report = r; });
    fx.sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kSent);
    CHECK(fx.received[1] == 1);
    CHECK(fx.received[2] == 1);
    CHECK(fx.medium.frames_transmitted() == 1);
  }

  TEST_CASE("network retransmission flag marks every attempt") {
    Fixture fx(TopologyMatrix::full_mesh(2));
    fx.macs[0]->send(1, 20, 7, true);
    fx.sim.run_all();
    CHECK(fx.medium.tally(0).tx_retransmission == 1);
    CHECK(fx.medium.tally(0).tx_original == 0);
  }

  TEST_CASE("availability gate refuses the exchange") {
    Fixture fx(TopologyMatrix::full_mesh(2));
    fx.macs[0]->set_availability([](NodeId n, SimTime, SimTime) { return n != 1; });
    std::optional<TxReport> report;
    fx.macs[0]->send(1, 20, 7, false, [&](const TxReport& r) { report = r; });
    fx.sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kUnavailable);
    CHECK(fx.medium.frames_transmitted() == 0);
  }

  TEST_CASE("queue limit reports overflow") {
    CsmaConfig cfg;
    cfg.queue_limit = 2;
    Fixture fx(TopologyMatrix::full_mesh(2), cfg);
    std::vector<TxStatus> statuses;
    for (int i = 0; i < 4; ++i) {
      fx.macs[0]->send(1, 10, i, false, [&](const TxReport& r) { statuses.push_back(r.status); });
    }
    fx.sim.run_all();
    CHECK(std::count(statuses.begin(), statuses.end(), TxStatus::kQueueFull) == 1);
    CHECK(std::count(statuses.begin(), statuses.end(), TxStatus::kAcked) == 3);
  }

  TEST_CASE("persistently busy channel gives a channel access failure") {
    Fixture fx(TopologyMatrix::full_mesh(3));
    Frame blocker;
    blocker.transmitter = 2;
    blocker.channel = kDot154Channel;
    blocker.kind = FrameKind::kDot154Data;
    blocker.length_bytes = 2000;  // 64 ms on air
    blocker.start = 0;
    fx.medium.transmit(blocker);
    std::optional<TxReport> report;
    fx.macs[0]->send(1, 10, 1, false, [&](const TxReport& r) { report = r; });
    fx.sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kChannelAccessFailure);
  }

  TEST_CASE("two senders within one backoff slot are both acked") {
    // Exhaustive over start offsets inside one slot and several seeds.
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      for (Duration offset = 0; offset < 320; offset += 20) {
        Fixture fx(TopologyMatrix::full_mesh(3), {}, seed);
        std::vector<TxStatus> st;
        fx.macs[0]->send(2, 30, 1, false, [&](const TxReport& r) { st.push_back(r.status); });
        fx.sim.schedule(offset, [&] {
          fx.macs[1]->send(2, 30, 2, false, [&](const TxReport& r) { st.push_back(r.status); });
        });
        fx.sim.run_all();
        REQUIRE(st.size() == 2);
        CHECK(st[0] == TxStatus::kAcked);
        CHECK(st[1] == TxStatus::kAcked);
        CHECK(fx.received[2] == 2);
        ++cases;
      }
    }
    CHECK(cases == 128);
  }

  TEST_CASE("duplicate data after a lost ack is not passed up twice") {
    Simulator sim;
    MediumConfig mcfg;
    Medium medium(sim, TopologyMatrix::full_mesh(2), mcfg, 1);
    for (NodeId v = 0; v < 2; ++v) medium.set_fixed_channel(v, kDot154Channel);
    CsmaMac a(sim, medium, 0, {}, Rng(1));
    CsmaMac b(sim, medium, 1, {}, Rng(2));
    int acks_dropped = 0;
    medium.set_receive_handler(0, [&](const Frame& f) {
      if (f.kind == FrameKind::kDot154Ack && acks_dropped < 2) {
        ++acks_dropped;
        return;
      }
      a.on_frame(f);
    });
    medium.set_receive_handler(1, [&](const Frame& f) { b.on_frame(f); });
    int up = 0;
    b.set_receive_handler([&](NodeId, const std::any&) { ++up; });
    std::optional<TxReport> report;
    a.send(1, 10, 1, false, [&](const TxReport& r) { report = r; });
    sim.run_all();
    REQUIRE(report);
    CHECK(report->status == TxStatus::kAcked);
    CHECK(report->attempts == 3);
    CHECK(up == 1);
  }
}
