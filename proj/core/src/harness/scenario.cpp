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

#include "btsim/harness/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <string>

#include "btsim/bticn/bticn.hpp"
#include "btsim/btmesh/mesh_network.hpp"
#include "btsim/harness/topology_builder.hpp"
#include "btsim/ndn/network.hpp"
#include "btsim/sim/error.hpp"
#include "btsim/sim/simulator.hpp"

namespace btsim::harness {
namespace {

constexpr std::uint64_t kScheduleStream = 0x5c4ed;
constexpr std::uint64_t kConsumerStream = 0xc0de;
constexpr std::uint64_t kPhaseStream = 0xb71c;
const btmesh::MeshAddress kManyToOneGroup = btmesh::MeshAddress::group(0xC000);
const btmesh::MeshAddress kOneToManyGroup = btmesh::MeshAddress::group(0xC001);

std::vector<std::uint8_t> item_payload(std::size_t bytes, NodeId producer, std::uint64_t seq) {
  std::vector<std::uint8_t> p(bytes, 0);
  for (std::size_t i = 0; i < bytes; ++i) {
    const std::uint64_t v = i < 4 ? seq >> (8 * i) : producer >> (8 * (i - 4));
    p[i] = static_cast<std::uint8_t>(v & 0xFF);
  }
  return p;
}

ndn::Name item_prefix(NodeId producer) {
  return ndn::Name({"bench", std::to_string(producer)});
}

ndn::Name item_name(NodeId producer, std::uint64_t seq) {
  return item_prefix(producer).append(std::to_string(seq));
}

std::optional<std::uint64_t> parse_seq(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Preallocated records indexed by (producer, seq, consumer).
class RecordBook {
 public:
  RecordBook(const Roles& roles, unsigned items) : items_(items) {
    for (NodeId p : roles.producers) {
      for (std::uint64_t k = 0; k < items; ++k) {
        for (NodeId c : roles.consumers) {
          if (c == p) continue;
          index_[key(p, k, c)] = records_.size();
          records_.push_back({p, k, c, 0, 0, false});
        }
      }
    }
    settled_.assign(records_.size(), false);
  }

  ArrivalRecord* find(NodeId p, std::uint64_t k, NodeId c) {
    auto it = index_.find(key(p, k, c));
    return it == index_.end() ? nullptr : &records_[it->second];
  }

  void set_start(NodeId p, std::uint64_t k, NodeId c, SimTime t) {
    if (ArrivalRecord* r = find(p, k, c)) r->t_start = t;
  }

  void deliver(NodeId p, std::uint64_t k, NodeId c, SimTime at) {
    auto it = index_.find(key(p, k, c));
    if (it == index_.end() || settled_[it->second]) return;
    records_[it->second].delivered = true;
    records_[it->second].t_arrival = at;
    settled_[it->second] = true;
  }

  void fail(NodeId p, std::uint64_t k, NodeId c) {
    auto it = index_.find(key(p, k, c));
    if (it != index_.end()) settled_[it->second] = true;
  }

  bool any_unsettled() const {
    return std::find(settled_.begin(), settled_.end(), false) != settled_.end();
  }

  std::vector<ArrivalRecord> take() { return std::move(records_); }

 private:
  static std::uint64_t key(NodeId p, std::uint64_t k, NodeId c) {
    return (static_cast<std::uint64_t>(p) << 44) | (k << 20) | c;
  }
  unsigned items_;
  std::vector<ArrivalRecord> records_;
  std::vector<bool> settled_;
  std::map<std::uint64_t, std::size_t> index_;
};

// Medium over the configured topology with the configured interference.
std::unique_ptr<Medium> make_medium(Simulator& sim, const ScenarioConfig& c) {
  auto medium =
      std::make_unique<Medium>(sim, build_topology(c.topology, c.nodes), c.medium, c.seed);
  if (c.interference == Interference::kFullMesh) {
    medium->set_interference(TopologyMatrix::full_mesh(c.nodes));
  }
  return medium;
}

void finish_common(RunResult& out, Simulator& sim, Medium& medium, RecordBook& book) {
  out.traffic = traffic_from(medium.tallies());
  out.frames_transmitted = medium.frames_transmitted();
  out.frames_delivered = medium.frames_delivered();
  out.events_executed = sim.executed();
  out.trace_digest = sim.trace_digest();
  out.truncated = book.any_unsettled();
  out.frame_log = medium.frame_log();
  out.arrivals = book.take();
}

RunResult run_btmesh(const ScenarioConfig& c) {
  RunResult out;
  out.config = c;
  const Roles roles = roles_for(c.pattern, c.nodes);
  const btmesh::MeshAddress group =
      c.pattern == Pattern::kManyToOne ? kManyToOneGroup : kOneToManyGroup;
  Simulator sim;
  const auto medium_ptr = make_medium(sim, c);
  Medium& medium = *medium_ptr;
  btmesh::MeshNetwork mesh(sim, medium, c.mesh, c.seed);
  for (NodeId consumer : roles.consumers) mesh.subscribe(consumer, group);

  RecordBook book(roles, c.items_per_producer);
  // Mesh sequence number -> item index, per producer.
  std::vector<std::map<std::uint32_t, std::uint64_t>> item_of(c.nodes);
  out.relayed_pdus.assign(c.nodes, 0);
  out.relayed_by_source.assign(c.nodes, std::vector<std::uint64_t>(c.nodes, 0));

  for (NodeId p : roles.producers) {
    const std::vector<SimTime> times = publish_schedule(c, p);
    for (std::uint64_t k = 0; k < times.size(); ++k) {
      for (NodeId consumer : roles.consumers) book.set_start(p, k, consumer, times[k]);
      sim.schedule(times[k], [&, p, k] {
        const std::uint32_t seq = mesh.publish(p, group, item_payload(c.payload_bytes, p, k));
        item_of[p][seq] = k;
      });
    }
  }
  mesh.add_delivery_observer([&](NodeId node, const btmesh::MeshNetworkPdu& pdu, SimTime at) {
    const auto src = mesh.node_of(pdu.src);
    if (!src) return;
    auto it = item_of[*src].find(pdu.seq);
    if (it != item_of[*src].end()) book.deliver(*src, it->second, node, at);
  });
  mesh.add_relay_observer([&](NodeId node, const btmesh::MeshNetworkPdu& pdu) {
    ++out.relayed_pdus[node];
    if (const auto src = mesh.node_of(pdu.src)) ++out.relayed_by_source[node][*src];
  });
  sim.run(*c.duration_limit);
  finish_common(out, sim, medium, book);
  return out;
}

void attach_ndn_producer(Simulator& sim, ndn::Forwarder& fw, NodeId p,
                         std::vector<SimTime> times, std::size_t payload_bytes) {
  fw.register_producer(item_prefix(p), [&sim, p, times = std::move(times), payload_bytes](
                                           const ndn::Interest& i) -> std::optional<ndn::Data> {
    if (i.name.size() != 3) return std::nullopt;
    const auto seq = parse_seq(i.name[2]);
    if (!seq || *seq >= times.size() || times[*seq] > sim.now()) return std::nullopt;
    return ndn::Data{i.name, item_payload(payload_bytes, p, *seq)};
  });
}

RunResult run_ndn(const ScenarioConfig& c) {
  RunResult out;
  out.config = c;
  const Roles roles = roles_for(c.pattern, c.nodes);
  Simulator sim;
  const auto medium_ptr = make_medium(sim, c);
  Medium& medium = *medium_ptr;
  ndn::NdnNetwork net(sim, medium, c.ndn, c.seed);
  RecordBook book(roles, c.items_per_producer);

  std::vector<std::vector<SimTime>> schedule(c.nodes);
  for (NodeId p : roles.producers) {
    schedule[p] = publish_schedule(c, p);
    attach_ndn_producer(sim, net.node(p), p, schedule[p], c.payload_bytes);
    net.route_to(item_prefix(p), p);
  }

  auto record = [&book](NodeId p, std::uint64_t k, NodeId consumer,
                        const ndn::RequestResult& r) {
    if (r.status == ndn::RequestStatus::kSatisfied) {
      book.deliver(p, k, consumer, r.completed_at);
    } else {
      book.fail(p, k, consumer);
    }
  };

  if (c.pattern == Pattern::kManyToOne) {
    // One outstanding Interest per producer; item k is requested once it is
    // published and item k-1 has completed.
    const NodeId consumer = roles.consumers.front();
    auto request = std::make_shared<std::function<void(NodeId, std::uint64_t)>>();
    *request = [&, consumer, request](NodeId p, std::uint64_t k) {
      book.set_start(p, k, consumer, sim.now());
      net.node(consumer).express_interest(
          item_name(p, k), [&, p, k, consumer, request](const ndn::RequestResult& r) {
            record(p, k, consumer, r);
            if (k + 1 >= schedule[p].size()) return;
            const SimTime next = std::max(schedule[p][k + 1], sim.now());
            sim.schedule(next, [request, p, k] { (*request)(p, k + 1); });
          });
    };
    for (NodeId p : roles.producers) {
      sim.schedule(schedule[p][0], [request, p] { (*request)(p, 0); });
    }
    sim.run(*c.duration_limit);
    // Break the self-reference so the closure is released.
    *request = nullptr;
  } else {
    const NodeId p = roles.producers.front();
    for (NodeId consumer : roles.consumers) {
      Rng rng = Rng::derive(c.seed, {kConsumerStream, consumer});
      for (std::uint64_t k = 0; k < schedule[p].size(); ++k) {
        const SimTime at = schedule[p][k] + rng.uniform(0, c.consumer_jitter);
        book.set_start(p, k, consumer, at);
        sim.schedule(at, [&, p, k, consumer] {
          net.node(consumer).express_interest(
              item_name(p, k),
              [&, p, k, consumer](const ndn::RequestResult& r) { record(p, k, consumer, r); });
        });
      }
    }
    sim.run(*c.duration_limit);
  }
  for (NodeId id = 0; id < c.nodes; ++id) out.ndn_stats.push_back(net.node(id).stats());
  finish_common(out, sim, medium, book);
  return out;
}

RunResult run_bticn(const ScenarioConfig& c) {
  RunResult out;
  out.config = c;
  Simulator sim;
  const auto medium_ptr = make_medium(sim, c);
  Medium& medium = *medium_ptr;
  ndn::NdnNetwork net(sim, medium, c.ndn, c.seed);
  bticn::BtIcn icn(sim, net, c.bticn);

  Roles roles;
  NodeId friend_node = 0;
  std::vector<NodeId> lpns;
  if (c.pattern == Pattern::kManyToOne) {
    // Sleepy producers feed the friend, which is the sink.
    friend_node = 0;
    for (NodeId id = 1; id < c.nodes; ++id) lpns.push_back(id);
    roles.consumers = {friend_node};
    roles.producers = lpns;
  } else {
    // Always-on producer 0; sleepy consumers reach it through friend 1.
    friend_node = 1;
    for (NodeId id = 2; id < c.nodes; ++id) lpns.push_back(id);
    roles.producers = {0};
    roles.consumers = lpns;
  }
  for (NodeId lpn : lpns) {
    Rng rng = Rng::derive(c.seed, {kPhaseStream, lpn});
    icn.add_lpn(lpn, friend_node, rng.uniform(0, c.bticn.cycle - 1));
  }
  RecordBook book(roles, c.items_per_producer);

  if (c.pattern == Pattern::kManyToOne) {
    for (NodeId lpn : lpns) {
      const std::vector<SimTime> times = publish_schedule(c, lpn);
      icn.friend_subscribe(friend_node, lpn, item_prefix(lpn), c.bticn.long_lived_lifetime);
      for (std::uint64_t k = 0; k < times.size(); ++k) {
        book.set_start(lpn, k, friend_node, times[k]);
        sim.schedule(times[k], [&, lpn, k] {
          icn.lpn_publish(lpn, item_prefix(lpn), item_payload(c.payload_bytes, lpn, k));
        });
      }
    }
    sim.run(*c.duration_limit);
    for (const auto& d : icn.friend_deliveries(friend_node)) {
      if (d.name.size() != 3) continue;
      const auto p = parse_seq(d.name[1]);
      const auto k = parse_seq(d.name[2]);
      if (p && k) book.deliver(static_cast<NodeId>(*p), *k, friend_node, d.at);
    }
  } else {
    const NodeId p = roles.producers.front();
    const std::vector<SimTime> times = publish_schedule(c, p);
    attach_ndn_producer(sim, net.node(p), p, times, c.payload_bytes);
    ndn::Forwarder& fw = net.node(friend_node);
    fw.add_route(item_prefix(p), *fw.face_to(p));
    for (NodeId lpn : lpns) {
      const bticn::SleepSchedule& sched = icn.schedule_of(lpn);
      Rng rng = Rng::derive(c.seed, {kConsumerStream, lpn});
      const Duration spread = std::min(c.consumer_jitter, sched.awake_window() / 2);
      for (std::uint64_t k = 0; k < times.size(); ++k) {
        const SimTime base = sched.awake(times[k]) ? times[k] : sched.next_wake(times[k]);
        SimTime at = base + rng.uniform(0, spread);
        if (!sched.awake(at)) at = base;
        book.set_start(p, k, lpn, at);
        sim.schedule(at, [&, p, k, lpn] {
          icn.lpn_request(lpn, item_name(p, k), [&, p, k, lpn](const bticn::LpnRequestResult& r) {
            if (r.satisfied) {
              book.deliver(p, k, lpn, r.completed_at);
            } else {
              book.fail(p, k, lpn);
            }
          });
        });
      }
    }
    sim.run(*c.duration_limit);
  }
  for (NodeId id = 0; id < c.nodes; ++id) out.ndn_stats.push_back(net.node(id).stats());
  finish_common(out, sim, medium, book);
  return out;
}

RunResult dispatch(const ScenarioConfig& cfg) {
  const ScenarioConfig c = cfg.resolved();
  switch (c.stack) {
    case Stack::kBtMesh:
      return run_btmesh(c);
    case Stack::kNdn:
      return run_ndn(c);
    case Stack::kBtIcn:
      return run_bticn(c);
  }
  throw ConfigError("unknown stack");
}

}  // namespace

std::vector<SimTime> publish_schedule(const ScenarioConfig& c, NodeId producer) {
  Rng rng = Rng::derive(c.seed, {kScheduleStream, producer});
  const Duration interval = c.publish_interval.value_or(sec(1));
  const Duration jitter = c.publish_jitter.value_or(0);
  std::vector<SimTime> times;
  times.reserve(c.items_per_producer);
  SimTime t = 0;
  for (unsigned k = 0; k < c.items_per_producer; ++k) {
    t += interval - jitter + rng.uniform(0, 2 * jitter);
    times.push_back(t);
  }
  return times;
}

RunResult run_scenario(const ScenarioConfig& cfg) { return dispatch(cfg); }

RunResult run_many_to_one(const ScenarioConfig& cfg) {
  if (cfg.pattern != Pattern::kManyToOne) throw ConfigError("scenario is not many-to-one");
  return dispatch(cfg);
}

RunResult run_one_to_many(const ScenarioConfig& cfg) {
  if (cfg.pattern != Pattern::kOneToMany) throw ConfigError("scenario is not one-to-many");
  return dispatch(cfg);
}

}  // namespace btsim::harness
