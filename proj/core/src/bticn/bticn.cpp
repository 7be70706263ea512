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

#include "btsim/bticn/bticn.hpp"

#include <string>

#include "btsim/sim/error.hpp"

namespace btsim::bticn {

using ndn::Data;
using ndn::Name;

BtIcn::BtIcn(Simulator& sim, ndn::NdnNetwork& network, BtIcnConfig config)
    : sim_(sim), network_(network), config_(config) {
  network_.set_availability(
      [this](NodeId node, SimTime from, SimTime to) { return available(node, from, to); });
}

void BtIcn::add_lpn(NodeId lpn, NodeId friend_node, SleepSchedule schedule) {
  if (lpn >= network_.size() || friend_node >= network_.size() || lpn == friend_node) {
    throw ConfigError("invalid friendship " + std::to_string(friend_node) + " -> " +
                      std::to_string(lpn));
  }
  if (lpns_.contains(lpn)) throw ConfigError("node already has a friend");
  if (lpns_.contains(friend_node)) throw ConfigError("a low-power node cannot act as friend");
  ndn::Forwarder& fw = network_.node(lpn);
  const auto face = fw.face_to(friend_node);
  if (!face) throw ConfigError("friend is not a neighbor of the low-power node");
  fw.add_route(Name(), *face);
  lpns_.emplace(lpn, Lpn{friend_node, schedule, {}, {}, {}});
}

void BtIcn::add_lpn(NodeId lpn, NodeId friend_node, SimTime phase) {
  add_lpn(lpn, friend_node, SleepSchedule(config_.cycle, config_.awake_window, phase));
}

BtIcn::Lpn& BtIcn::lpn_state(NodeId lpn) {
  auto it = lpns_.find(lpn);
  if (it == lpns_.end()) throw ProtocolError("node " + std::to_string(lpn) + " is not an LPN");
  return it->second;
}

NodeId BtIcn::friend_of(NodeId lpn) const {
  auto it = lpns_.find(lpn);
  if (it == lpns_.end()) throw ProtocolError("node " + std::to_string(lpn) + " is not an LPN");
  return it->second.friend_node;
}

const SleepSchedule& BtIcn::schedule_of(NodeId lpn) const {
  auto it = lpns_.find(lpn);
  if (it == lpns_.end()) throw ProtocolError("node " + std::to_string(lpn) + " is not an LPN");
  return it->second.schedule;
}

bool BtIcn::available(NodeId node, SimTime from, SimTime to) const {
  auto it = lpns_.find(node);
  return it == lpns_.end() || it->second.schedule.awake_throughout(from, to);
}

void BtIcn::ensure_producer(NodeId lpn, const Name& prefix) {
  Lpn& state = lpn_state(lpn);
  for (const Name& p : state.produced_prefixes) {
    if (p == prefix) return;
  }
  state.produced_prefixes.push_back(prefix);
  network_.node(lpn).register_producer(
      prefix, [this, lpn](const ndn::Interest& interest) -> std::optional<Data> {
        const Lpn& s = lpns_.at(lpn);
        auto it = s.items.find(interest.name);
        if (it == s.items.end()) return std::nullopt;
        return it->second;
      });
}

Name BtIcn::lpn_publish(NodeId lpn, const Name& prefix, std::vector<std::uint8_t> payload) {
  ensure_producer(lpn, prefix);
  Lpn& state = lpn_state(lpn);
  const std::uint64_t seq = state.next_seq[prefix]++;
  Data data{prefix.append(std::to_string(seq)), std::move(payload)};
  const Name name = data.name;
  state.items.insert_or_assign(name, data);
  auto answer = [this, lpn, data] {
    if (network_.node(lpn).pit().find(data.name)) network_.node(lpn).on_data(data, ndn::kAppFace);
  };
  const SimTime now = sim_.now();
  if (state.schedule.awake(now)) {
    answer();
  } else {
    sim_.schedule(state.schedule.next_wake(now), answer);
  }
  return name;
}

void BtIcn::friend_subscribe(NodeId friend_node, NodeId lpn, const Name& prefix,
                             Duration lifetime, std::uint64_t first_seq) {
  const Lpn& state = lpn_state(lpn);
  if (state.friend_node != friend_node) throw ConfigError("subscriber is not the LPN's friend");
  if (lifetime <= state.schedule.cycle()) {
    throw ConfigError("long-lived Interest lifetime must exceed the sleep cycle");
  }
  ndn::Forwarder& fw = network_.node(friend_node);
  fw.add_route(prefix, *fw.face_to(lpn));
  ensure_producer(lpn, prefix);
  auto sub = std::make_shared<Subscription>(
      Subscription{friend_node, lpn, prefix, lifetime, first_seq});
  express_subscription(sub);
}

void BtIcn::express_subscription(const std::shared_ptr<Subscription>& sub) {
  const SleepSchedule& schedule = lpns_.at(sub->lpn).schedule;
  const SimTime now = sim_.now();
  if (!schedule.awake_throughout(now, now + config_.send_margin)) {
    SimTime wake = schedule.next_wake(now) + config_.wake_guard;
    if (wake <= now) wake = schedule.next_wake(now + schedule.awake_window()) + config_.wake_guard;
    sim_.schedule(wake, [this, sub] { express_subscription(sub); });
    return;
  }
  const Name name = sub->prefix.append(std::to_string(sub->seq));
  ndn::InterestOptions options;
  options.lifetime = sub->lifetime;
  options.max_retries = 0;
  network_.node(sub->friend_node)
      .express_interest(
          name,
          [this, sub](const ndn::RequestResult& r) {
            if (r.status == ndn::RequestStatus::kSatisfied) {
              deliveries_[sub->friend_node].push_back({r.name, r.completed_at});
              ++sub->seq;
            }
            express_subscription(sub);
          },
          options);
}

const std::vector<FriendDelivery>& BtIcn::friend_deliveries(NodeId friend_node) const {
  static const std::vector<FriendDelivery> kEmpty;
  auto it = deliveries_.find(friend_node);
  return it == deliveries_.end() ? kEmpty : it->second;
}

void BtIcn::lpn_request(NodeId lpn, const Name& name, Duration repeat_after, RequestDone done) {
  const Lpn& state = lpn_state(lpn);
  if (!state.schedule.awake(sim_.now())) throw ProtocolError("LPN request issued while asleep");
  auto request = std::make_shared<Request>();
  request->lpn = lpn;
  request->result.name = name;
  request->result.first_request = sim_.now();
  request->repeat_after = repeat_after == 0 ? state.schedule.cycle() : repeat_after;
  request->done = std::move(done);
  attempt(request);
}

void BtIcn::attempt(const std::shared_ptr<Request>& request) {
  if (request->finished) return;
  ++request->result.attempts;
  ndn::InterestOptions options;
  options.lifetime = config_.long_lived_lifetime;
  options.max_retries = 0;
  network_.node(request->lpn)
      .express_interest(
          request->result.name,
          [this, request](const ndn::RequestResult& r) {
            finish(request, r.status == ndn::RequestStatus::kSatisfied);
          },
          options);
  if (request->finished || request->result.attempts > config_.max_repeats) return;
  request->repeat_timer =
      sim_.schedule_in(request->repeat_after, [this, request] { attempt(request); });
}

void BtIcn::finish(const std::shared_ptr<Request>& request, bool satisfied) {
  if (request->finished) return;
  request->finished = true;
  sim_.cancel(request->repeat_timer);
  request->result.satisfied = satisfied;
  request->result.completed_at = sim_.now();
  if (request->done) request->done(request->result);
}

}  // namespace btsim::bticn
