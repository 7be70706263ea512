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

#include <deque>
#include <map>
#include <set>

#include "btsim/ndn/content_store.hpp"
#include "btsim/ndn/fib.hpp"
#include "btsim/ndn/forwarder.hpp"
#include "btsim/ndn/name.hpp"
#include "btsim/ndn/network.hpp"
#include "btsim/ndn/pit.hpp"
#include "btsim/sim/error.hpp"
#include "btsim/sim/medium.hpp"
#include "btsim/sim/simulator.hpp"
#include "doctest.h"

using namespace btsim;
using namespace btsim::ndn;

namespace {

Name N(std::string_view uri) { return Name::parse(uri); }

Data make_data(const Name& name) { return Data{name, {0xAB, 0xCD}}; }

struct Net {
  Simulator sim;
  Medium medium;
  NdnNetwork ndn;
  std::vector<RequestResult> results;

  explicit Net(TopologyMatrix vis, ForwarderConfig fwd = {}, std::uint64_t seed = 1)
      : medium(sim, vis, MediumConfig{}, seed), ndn(sim, medium, NdnNetworkConfig{{}, fwd, false}, seed) {}

  void produce(NodeId node, const Name& prefix) {
    ndn.node(node).register_producer(prefix, [](const Interest& i) { return make_data(i.name); });
    ndn.route_to(prefix, node);
  }

  ExpressOutcome express(NodeId node, const Name& name, InterestOptions opts = {}) {
    return ndn.node(node).express_interest(
        name, [this](const RequestResult& r) { results.push_back(r); }, opts);
  }
};

struct SendLog {
  std::size_t interests = 0;
  std::size_t interest_retx = 0;
  std::size_t data = 0;
  std::map<Name, std::size_t> data_by_name;
  std::map<Name, std::size_t> interests_by_name;

  void attach(Forwarder& f) {
    f.add_send_observer([this](FaceId, const Packet& p, bool retx) {
      if (const auto* i = std::get_if<Interest>(&p)) {
        ++interests;
        interest_retx += retx;
        ++interests_by_name[i->name];
      } else {
        ++data;
        ++data_by_name[std::get<Data>(p).name];
      }
    });
  }
};

}  // namespace

TEST_SUITE("name") {
  TEST_CASE("parse and print") {
    const Name n = N("/bench/3/17");
    CHECK(n.size() == 3);
    CHECK(n[0] == "bench");
    CHECK(n.to_uri() == "/bench/3/17");
    CHECK(N("/").empty());
    CHECK(N("//a//b/").size() == 2);
    CHECK(N("/a").append("b") == N("/a/b"));
    CHECK(N("/a/b/c").prefix(2) == N("/a/b"));
    CHECK(N("/a/b").prefix(9) == N("/a/b"));
  }

  TEST_CASE("prefix relation is component-wise") {
    CHECK(N("/bench").is_prefix_of(N("/bench/1")));
    CHECK(N("/bench/1").is_prefix_of(N("/bench/1")));
    CHECK(N("/").is_prefix_of(N("/x")));
    CHECK_FALSE(N("/bench/1").is_prefix_of(N("/bench/10")));
    CHECK_FALSE(N("/bench/1/2").is_prefix_of(N("/bench/1")));
  }

  TEST_CASE("encoded sizes") {
    // Each one-byte component costs type + length + value; the name wraps them.
    CHECK(N("/a/b").tlv_size() == 2 + 3 + 3);
    CHECK(N("/").tlv_size() == 2);
    const Name n = N("/bench/1/5");
    const std::size_t name_tlv = 2 + (2 + 5) + (2 + 1) + (2 + 1);
    CHECK(n.tlv_size() == name_tlv);
    CHECK(Interest{n, 1}.wire_size() == 2 + name_tlv + 6 + 4);
    CHECK(make_data(n).wire_size() == 2 + name_tlv + 2 + 2 + 5);
    CHECK(NameHash{}(N("/a/b")) == NameHash{}(N("/a/b")));
  }
}

TEST_SUITE("content store") {
  TEST_CASE("31st distinct Data evicts the least recently used") {
    ContentStore cs(30);
    for (int i = 0; i < 30; ++i) cs.insert(make_data(N("/d").append(std::to_string(i))));
    REQUIRE(cs.find(N("/d/0")) != nullptr);  // refresh the oldest
    cs.insert(make_data(N("/d/30")));
    CHECK(cs.size() == 30);
    CHECK(cs.contains(N("/d/0")));
    CHECK_FALSE(cs.contains(N("/d/1")));
    CHECK(cs.contains(N("/d/30")));
    CHECK(cs.evictions() == 1);
  }

  TEST_CASE("FIFO policy ignores lookups") {
    ContentStore cs(2, CsPolicy::kFifo);
    cs.insert(make_data(N("/a")));
    cs.insert(make_data(N("/b")));
    cs.find(N("/a"));
    cs.insert(make_data(N("/c")));
    CHECK_FALSE(cs.contains(N("/a")));
    CHECK(cs.contains(N("/b")));
  }

  TEST_CASE("exact-name lookup and zero capacity") {
    ContentStore cs(4);
    cs.insert(make_data(N("/a/b")));
    CHECK(cs.find(N("/a")) == nullptr);
    CHECK(cs.find(N("/a/b/c")) == nullptr);
    const Data* hit = cs.find(N("/a/b"));
    REQUIRE(hit != nullptr);
    CHECK(hit->name == N("/a/b"));
    cs.insert(Data{N("/a/b"), {9}});
    CHECK(cs.size() == 1);
    CHECK(cs.find(N("/a/b"))->payload == std::vector<std::uint8_t>{9});
    ContentStore none(0);
    none.insert(make_data(N("/a")));
    CHECK(none.size() == 0);
  }

  TEST_CASE("matches an LRU reference model") {
    Rng rng(21);
    ContentStore cs(30);
    std::deque<Name> model;  // front = least recent
    for (int step = 0; step < 5000; ++step) {
      const Name n = N("/m").append(std::to_string(rng.uniform(0, 60)));
      auto it = std::find(model.begin(), model.end(), n);
      if (rng.bernoulli(0.5)) {
        const bool hit = cs.find(n) != nullptr;
        REQUIRE(hit == (it != model.end()));
        if (hit) {
          model.erase(it);
          model.push_back(n);
        }
      } else {
        cs.insert(make_data(n));
        if (it != model.end()) model.erase(it);
        if (model.size() == 30) model.pop_front();
        model.push_back(n);
      }
      REQUIRE(cs.size() == model.size());
      REQUIRE(cs.size() <= 30);
    }
  }
}

TEST_SUITE("fib and pit") {
  TEST_CASE("longest prefix match") {
    Fib fib;
    fib.add_route(N("/bench"), 1);
    fib.add_route(N("/bench/3"), 2);
    fib.add_route(N("/bench/3"), 2);
    fib.add_route(N("/bench/3"), 4);
    CHECK(fib.size() == 2);
    REQUIRE(fib.longest_prefix_match(N("/bench/3/7")) != nullptr);
    CHECK(fib.longest_prefix_match(N("/bench/3/7"))->faces == std::vector<FaceId>{2, 4});
    CHECK(fib.longest_prefix_match(N("/bench/30/1"))->faces == std::vector<FaceId>{1});
    CHECK(fib.longest_prefix_match(N("/other")) == nullptr);
    fib.remove_prefix(N("/bench/3"));
    CHECK(fib.longest_prefix_match(N("/bench/3/7"))->prefix == N("/bench"));
  }

  TEST_CASE("one entry per name") {
    Pit pit;
    PitEntry e;
    e.name = N("/x");
    pit.insert(e);
    CHECK_THROWS_AS(pit.insert(e), SimulationError);
    CHECK(pit.find(N("/x")) != nullptr);
    CHECK(pit.erase(N("/x")).name == N("/x"));
    CHECK(pit.size() == 0);
  }
}

TEST_SUITE("forwarder") {
  TEST_CASE("routed request is satisfied and consumes PIT state") {
    Net net(TopologyMatrix::line(2));
    net.produce(1, N("/bench/1"));
    CHECK(net.express(0, N("/bench/1/0")) == ExpressOutcome::kPending);
    CHECK(net.ndn.node(0).pit().size() == 1);
    net.sim.run_all();
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kSatisfied);
    CHECK(net.results[0].name == N("/bench/1/0"));
    CHECK(net.results[0].completed_at - net.results[0].requested_at < msec(20));
    CHECK(net.ndn.node(0).pit().size() == 0);
    CHECK(net.ndn.node(1).pit().size() == 0);
    CHECK(net.ndn.node(0).content_store().contains(N("/bench/1/0")));
    CHECK(net.ndn.node(1).content_store().contains(N("/bench/1/0")));
  }

  TEST_CASE("locally cached name completes immediately") {
    Net net(TopologyMatrix::line(2));
    net.produce(1, N("/bench/1"));
    net.express(0, N("/bench/1/0"));
    net.sim.run_all();
    const auto frames = net.medium.frames_transmitted();
    CHECK(net.express(0, N("/bench/1/0")) == ExpressOutcome::kSatisfiedFromCache);
    REQUIRE(net.results.size() == 2);
    CHECK(net.results[1].from_local_cache);
    CHECK(net.results[1].completed_at == net.results[1].requested_at);
    CHECK(net.medium.frames_transmitted() == frames);
  }

  TEST_CASE("no route and no cache is unroutable") {
    Net net(TopologyMatrix::line(2));
    CHECK(net.express(0, N("/nowhere/1")) == ExpressOutcome::kUnroutable);
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kUnroutable);
    CHECK(net.ndn.node(0).stats().dropped_unroutable == 1);
    CHECK_THROWS_AS(net.express(0, Name()), ProtocolError);
  }

  TEST_CASE("second consumer behind a relay is aggregated") {
    // Relay 0, consumers 1..3 in mutual range of each other and the relay, producer 4.
    TopologyMatrix star(5);
    for (NodeId v = 1; v < 5; ++v) star.connect(0, v);
    for (NodeId a = 1; a <= 3; ++a)
      for (NodeId b = a + 1; b <= 3; ++b) star.connect(a, b);
    Net net(star);
    // The producer answers once all three Interests have reached the relay.
    net.ndn.node(4).register_producer(N("/bench/4"), [](const Interest&) { return std::nullopt; });
    net.ndn.route_to(N("/bench/4"), 4);
    net.sim.schedule(msec(300), [&net] { net.ndn.node(4).on_data(make_data(N("/bench/4/0")), kAppFace); });
    SendLog relay;
    relay.attach(net.ndn.node(0));
    for (NodeId c = 1; c <= 3; ++c) net.express(c, N("/bench/4/0"));
    net.sim.run_all();
    CHECK(net.results.size() == 3);
    for (const auto& r : net.results) CHECK(r.status == RequestStatus::kSatisfied);
    CHECK(net.ndn.node(0).stats().aggregated == 2);
    CHECK(relay.interests == 1);
    CHECK(net.ndn.node(4).stats().interests_received == 1);
    CHECK(relay.data == 3);
  }

  TEST_CASE("duplicate nonce is dropped and a new nonce from the same face is re-forwarded") {
    Net net(TopologyMatrix::line(3));
    net.produce(2, N("/p"));
    Forwarder& relay = net.ndn.node(1);
    const FaceId down = *relay.face_to(0);
    CHECK(relay.on_interest(Interest{N("/p/1"), 42}, down) == InterestAction::kForwarded);
    CHECK(relay.on_interest(Interest{N("/p/1"), 42}, down) == InterestAction::kDropped);
    CHECK(relay.stats().dropped_duplicate == 1);
    CHECK(relay.on_interest(Interest{N("/p/1"), 43}, down) == InterestAction::kForwarded);
    CHECK(relay.on_interest(Interest{N("/p/9"), 1}, *relay.face_to(2)) == InterestAction::kDropped);
  }

  TEST_CASE("intermediate cache hit returns Data without reaching the producer") {
    Net net(TopologyMatrix::line(3));
    net.produce(2, N("/p"));
    net.ndn.node(1).content_store().insert(make_data(N("/p/5")));
    net.express(0, N("/p/5"));
    net.sim.run_all();
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kSatisfied);
    CHECK(net.ndn.node(2).stats().interests_received == 0);
    CHECK(net.ndn.node(1).stats().cs_hits == 1);
  }

  TEST_CASE("unsolicited Data is neither forwarded nor cached") {
    Net net(TopologyMatrix::line(3));
    Forwarder& relay = net.ndn.node(1);
    CHECK(relay.on_data(make_data(N("/p/1")), *relay.face_to(2)) == 0);
    CHECK_FALSE(relay.content_store().contains(N("/p/1")));
    CHECK(relay.stats().unsolicited_data == 1);
  }

  TEST_CASE("all transmissions unanswered gives five Interests and a timeout") {
    Net net(TopologyMatrix::line(2));
    net.ndn.node(0).add_route(N("/void"), *net.ndn.node(0).face_to(1));
    SendLog consumer;
    consumer.attach(net.ndn.node(0));
    net.express(0, N("/void/1"));
    net.sim.run_all();
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kTimedOut);
    CHECK(net.results[0].completed_at <= sec(10));
    CHECK(net.results[0].retransmissions == 4);
    CHECK(consumer.interests == 5);
    CHECK(consumer.interest_retx == 4);
  }

  TEST_CASE("loss-free link never fires the retry timer") {
    Net net(TopologyMatrix::line(2));
    net.produce(1, N("/bench/1"));
    net.express(0, N("/bench/1/0"));
    net.sim.run_all();
    CHECK(net.ndn.node(0).stats().interest_retransmissions == 0);
    CHECK(net.results.at(0).retransmissions == 0);
  }

  TEST_CASE("late producer is reached by the one-second retry") {
    Net net(TopologyMatrix::line(2));
    net.ndn.node(1).register_producer(N("/late"), [&net](const Interest& i) -> std::optional<Data> {
      if (net.sim.now() < msec(500)) return std::nullopt;
      return make_data(i.name);
    });
    net.ndn.route_to(N("/late"), 1);
    net.express(0, N("/late/0"));
    net.sim.run_all();
    REQUIRE(net.results.size() == 1);
    const Duration latency = net.results[0].completed_at - net.results[0].requested_at;
    CHECK(latency >= sec(1));
    CHECK(latency < sec(1) + msec(30));
    CHECK(net.results[0].retransmissions == 1);
  }

  TEST_CASE("retransmission satisfied by a downstream cache stops upstream traffic") {
    ForwarderConfig cfg;
    cfg.relay_retransmit = false;
    Net net(TopologyMatrix::line(3), cfg);
    net.ndn.node(0).add_route(N("/q"), *net.ndn.node(0).face_to(1));
    net.ndn.node(1).add_route(N("/q"), *net.ndn.node(1).face_to(2));
    net.express(0, N("/q/1"));
    net.sim.run(msec(500));
    // The relay learns the Data out of band before the consumer retries.
    net.ndn.node(1).content_store().insert(make_data(N("/q/1")));
    const auto upstream_before = net.ndn.node(2).stats().interests_received;
    net.sim.run_all();
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kSatisfied);
    CHECK(net.ndn.node(2).stats().interests_received == upstream_before);
  }

  TEST_CASE("pit_timer_fire retransmits then expires") {
    Net net(TopologyMatrix::line(2));
    Forwarder& f = net.ndn.node(0);
    f.add_route(N("/t"), *f.face_to(1));
    CHECK(f.pit_timer_fire(N("/t/1")) == PitTimerAction::kNone);
    net.express(0, N("/t/1"), InterestOptions{std::nullopt, 2u, sec(100)});
    CHECK(f.pit_timer_fire(N("/t/1")) == PitTimerAction::kRetransmitted);
    CHECK(f.pit_timer_fire(N("/t/1")) == PitTimerAction::kRetransmitted);
    CHECK(f.pit_timer_fire(N("/t/1")) == PitTimerAction::kExpired);
    REQUIRE(net.results.size() == 1);
    CHECK(net.results[0].status == RequestStatus::kTimedOut);
    CHECK(f.pit().size() == 0);
  }

  TEST_CASE("relay retransmission switch") {
    for (bool relay_retx : {true, false}) {
      ForwarderConfig cfg;
      cfg.relay_retransmit = relay_retx;
      Net net(TopologyMatrix::line(3), cfg);
      Forwarder& relay = net.ndn.node(1);
      relay.add_route(N("/r"), *relay.face_to(2));
      relay.on_interest(Interest{N("/r/1"), 5}, *relay.face_to(0));
      const PitEntry* e = relay.pit().find(N("/r/1"));
      REQUIRE(e != nullptr);
      CHECK((e->retry_timer != kNoEvent) == relay_retx);
      CHECK(e->expiry_timer != kNoEvent);
    }
  }

  TEST_CASE("forwarded Interest carries the remaining lifetime") {
    Net net(TopologyMatrix::line(2));
    Forwarder& f = net.ndn.node(0);
    f.add_route(N("/l"), *f.face_to(1));
    std::vector<Duration> lifetimes;
    f.add_send_observer([&](FaceId, const Packet& p, bool) {
      if (const auto* i = std::get_if<Interest>(&p)) lifetimes.push_back(i->lifetime);
    });
    net.express(0, N("/l/1"), InterestOptions{sec(4), 1u, sec(1)});
    net.sim.run_all();
    CHECK(lifetimes == std::vector<Duration>{sec(4), sec(3)});
  }
}

TEST_SUITE("forwarder properties") {
  TEST_CASE("random trees deliver every request with bounded Data and Interest counts") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = rng.uniform(3, 9);
      TopologyMatrix tree(n);
      for (NodeId a = 1; a < n; ++a) tree.connect(a, static_cast<NodeId>(rng.uniform(0, a - 1)));
      ForwarderConfig cfg;
      cfg.relay_retransmit = false;
      Net net(tree, cfg, trial + 1);
      const NodeId producer = static_cast<NodeId>(rng.uniform(0, n - 1));
      net.produce(producer, N("/p"));
      std::vector<SendLog> logs(n);
      std::vector<std::map<Name, std::size_t>> interests_in(n);
      for (NodeId v = 0; v < n; ++v) {
        logs[v].attach(net.ndn.node(v));
        Forwarder& f = net.ndn.node(v);
        f.add_send_observer([&interests_in, &f](FaceId face, const Packet& p, bool) {
          if (const auto* i = std::get_if<Interest>(&p)) {
            ++interests_in[f.face(face).neighbor][i->name];
          }
        });
      }
      std::size_t requests = 0;
      for (NodeId c = 0; c < n; ++c) {
        if (c == producer) continue;
        for (int k = 0; k < 3; ++k) {
          const Name name = N("/p").append(std::to_string(rng.uniform(0, 4)));
          net.sim.schedule(rng.uniform(0, msec(300)), [&net, c, name] { net.express(c, name); });
          ++requests;
        }
      }
      net.sim.run_all();
      CHECK(net.results.size() == requests);
      for (const auto& r : net.results) CHECK(r.status == RequestStatus::kSatisfied);
      for (NodeId v = 0; v < n; ++v) {
        CHECK(net.ndn.node(v).content_store().size() <= 30);
        for (const auto& [name, count] : logs[v].data_by_name) {
          CHECK(count <= interests_in[v][name]);
        }
      }
    }
  }

  TEST_CASE("consumer sends at most five Interests per request") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Net net(TopologyMatrix::line(3), {}, seed);
      Forwarder& c = net.ndn.node(0);
      c.add_route(N("/x"), *c.face_to(1));
      SendLog log;
      log.attach(c);
      for (int k = 0; k < 4; ++k) net.express(0, N("/x").append(std::to_string(k)));
      net.sim.run_all();
      for (const auto& [name, count] : log.interests_by_name) CHECK(count <= 5);
      CHECK(net.results.size() == 4);
    }
  }
}
