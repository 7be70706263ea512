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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "btsim/bticn/sleep_schedule.hpp"
#include "btsim/ndn/network.hpp"

namespace btsim::bticn {

struct BtIcnConfig {
  Duration cycle = sec(10);
  Duration awake_window = msec(500);
  Duration long_lived_lifetime = sec(30);
  // 0 selects one sleep cycle.
  Duration repeat_after = 0;
  unsigned max_repeats = 3;
  // Delay after a wake-up before deferred friend traffic is sent.
  Duration wake_guard = msec(2);
  // Minimum remaining awake time for the friend to send toward an LPN.
  Duration send_margin = msec(20);
};

struct LpnRequestResult {
  ndn::Name name;
  bool satisfied = false;
  SimTime first_request = 0;
  SimTime completed_at = 0;
  unsigned attempts = 0;

  Duration latency() const { return completed_at - first_request; }
};

struct FriendDelivery {
  ndn::Name name;
  SimTime at;
};

// Friend/low-power-node relationship expressed with plain NDN operations.
// The forwarders' MACs are gated so no frame reaches or leaves an LPN outside
// its awake windows.
class BtIcn {
 public:
  using RequestDone = std::function<void(const LpnRequestResult&)>;

  BtIcn(Simulator& sim, ndn::NdnNetwork& network, BtIcnConfig config);
  BtIcn(const BtIcn&) = delete;
  BtIcn& operator=(const BtIcn&) = delete;

  const BtIcnConfig& config() const { return config_; }

  // Registers `lpn` as a sleepy node whose sole next hop is `friend_node`.
  void add_lpn(NodeId lpn, NodeId friend_node, SleepSchedule schedule);
  // Same, with the configured cycle and window and the given phase.
  void add_lpn(NodeId lpn, NodeId friend_node, SimTime phase = 0);
  bool is_lpn(NodeId node) const { return lpns_.contains(node); }
  NodeId friend_of(NodeId lpn) const;
  const SleepSchedule& schedule_of(NodeId lpn) const;
  // Gate used by every MAC of the network.
  bool available(NodeId node, SimTime from, SimTime to) const;

  // Sleepy producer: stores the next item under `prefix`, answering any
  // pending Interest once the LPN is awake. Returns the Data name.
  ndn::Name lpn_publish(NodeId lpn, const ndn::Name& prefix, std::vector<std::uint8_t> payload);

  // Standing subscription: the friend keeps one long-lived Interest for
  // prefix/<seq> pending at the LPN and moves to seq+1 after each Data.
  // Throws ConfigError unless lifetime exceeds the LPN's sleep cycle.
  void friend_subscribe(NodeId friend_node, NodeId lpn, const ndn::Name& prefix,
                        Duration lifetime, std::uint64_t first_seq = 0);
  const std::vector<FriendDelivery>& friend_deliveries(NodeId friend_node) const;

  // Sleepy consumer: expresses `name` now and repeats after `repeat_after`
  // until satisfied or max_repeats is reached. Requires the LPN to be awake.
  void lpn_request(NodeId lpn, const ndn::Name& name, Duration repeat_after, RequestDone done);
  void lpn_request(NodeId lpn, const ndn::Name& name, RequestDone done) {
    lpn_request(lpn, name, config_.repeat_after, std::move(done));
  }

 private:
  struct Lpn {
    NodeId friend_node;
    SleepSchedule schedule;
    std::map<ndn::Name, std::uint64_t> next_seq;
    std::map<ndn::Name, ndn::Data> items;
    std::vector<ndn::Name> produced_prefixes;
  };
  struct Subscription {
    NodeId friend_node;
    NodeId lpn;
    ndn::Name prefix;
    Duration lifetime;
    std::uint64_t seq;
  };
  struct Request {
    NodeId lpn;
    LpnRequestResult result;
    Duration repeat_after;
    RequestDone done;
    bool finished = false;
    EventHandle repeat_timer = kNoEvent;
  };

  Lpn& lpn_state(NodeId lpn);
  void ensure_producer(NodeId lpn, const ndn::Name& prefix);
  void express_subscription(const std::shared_ptr<Subscription>& sub);
  void attempt(const std::shared_ptr<Request>& request);
  void finish(const std::shared_ptr<Request>& request, bool satisfied);

  Simulator& sim_;
  ndn::NdnNetwork& network_;
  BtIcnConfig config_;
  std::map<NodeId, Lpn> lpns_;
  std::map<NodeId, std::vector<FriendDelivery>> deliveries_;
};

}  // namespace btsim::bticn
