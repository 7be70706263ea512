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
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "btsim/btmesh/address.hpp"
#include "btsim/btmesh/friend_queue.hpp"
#include "btsim/btmesh/message_cache.hpp"
#include "btsim/btmesh/pdu.hpp"
#include "btsim/sim/medium.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"

namespace btsim::btmesh {

struct MeshConfig {
  std::uint8_t default_ttl = 7;
  std::size_t cache_capacity = 64;
  std::size_t friend_queue_capacity = 16;
  // Advertising bearer: `adv_events` events spaced `adv_interval` apart, each
  // event sends one frame per advertising channel back-to-back. Every event
  // start is delayed by U[0, adv_jitter].
  unsigned adv_events = 5;
  Duration adv_interval = msec(20);
  Duration adv_jitter = msec(10);
  std::uint32_t frame_overhead_bytes = 14;
  // Scanner dwell per advertising channel; 0 keeps every node on channel 37.
  Duration scan_window = msec(30);
  bool relay = true;
  // Locally originated PDUs are served before relay PDUs already waiting in
  // the advertising queue. The PDU currently on air is never preempted.
  bool local_first = true;
  // Subscribers answer ack_required messages automatically.
  bool auto_reply = true;
  std::vector<std::uint8_t> reply_payload{0x01};
};

enum class RxAction : std::uint8_t { kDropped, kDelivered, kRelayed, kBoth };

// A BT mesh deployment over a shared medium: one node per medium node, each
// provisioned with unicast address node + 1 and the relay feature per config.
class MeshNetwork {
 public:
  // Access-layer delivery of `pdu` at `node`.
  using DeliveryObserver = std::function<void(NodeId node, const MeshNetworkPdu& pdu, SimTime at)>;
  using RelayObserver = std::function<void(NodeId node, const MeshNetworkPdu& pdu)>;

  MeshNetwork(Simulator& sim, Medium& medium, MeshConfig config, std::uint64_t seed);
  MeshNetwork(const MeshNetwork&) = delete;
  MeshNetwork& operator=(const MeshNetwork&) = delete;

  const MeshConfig& config() const { return config_; }
  std::size_t node_count() const { return nodes_.size(); }
  MeshAddress address_of(NodeId node) const { return nodes_.at(node).address; }
  std::optional<NodeId> node_of(MeshAddress unicast) const;

  void subscribe(NodeId node, MeshAddress address);
  bool subscribed(NodeId node, MeshAddress dst) const;
  void set_relay(NodeId node, bool enabled);
  void set_ttl(NodeId node, std::uint8_t ttl);

  void add_delivery_observer(DeliveryObserver observer) { delivery_.push_back(std::move(observer)); }
  void add_relay_observer(RelayObserver observer) { relay_.push_back(std::move(observer)); }

  // Builds a PDU with the node's next sequence number and initial TTL and
  // hands it to the advertising bearer. Returns the sequence number.
  std::uint32_t publish(NodeId node, MeshAddress dst, std::vector<std::uint8_t> payload,
                        bool ack_required = false);

  // Queues `pdu` on the node's advertising bearer. Throws ProtocolError for
  // payloads that need segmentation.
  void advertise(NodeId node, MeshNetworkPdu pdu, bool local_origin = true);

  // Network-layer processing of a decoded PDU.
  RxAction on_mesh_frame(NodeId node, const MeshNetworkPdu& pdu);

  // Publishes a reply addressed to the requester's source address.
  std::uint32_t send_ack_reply(NodeId node, const MeshNetworkPdu& original,
                               std::vector<std::uint8_t> payload);

  // Friendship. An LPN has exactly one friend; the LPN's relay feature is
  // disabled and its radio follows set_lpn_awake().
  void establish_friendship(NodeId friend_node, NodeId lpn);
  std::optional<NodeId> friend_of(NodeId lpn) const;
  void set_lpn_awake(NodeId lpn, bool awake);
  bool lpn_awake(NodeId lpn) const;
  // Returns true if the PDU was queued for the LPN.
  bool friend_enqueue(NodeId friend_node, NodeId lpn, const MeshNetworkPdu& pdu);
  // The friend hands over every queued PDU, oldest first, and re-advertises
  // each one to the LPN. Throws ProtocolError without a friendship or while
  // the LPN sleeps.
  std::size_t lpn_poll(NodeId lpn);
  const FriendQueue& friend_queue(NodeId lpn) const;

  // Per-node counters.
  std::uint64_t relayed_count(NodeId node) const { return nodes_.at(node).relayed; }
  std::uint64_t delivered_count(NodeId node) const { return nodes_.at(node).delivered; }
  std::size_t bearer_backlog(NodeId node) const;

 private:
  struct Job {
    std::shared_ptr<const MeshNetworkPdu> pdu;
  };
  struct Node {
    MeshAddress address;
    std::set<MeshAddress> subscriptions;
    bool relay = true;
    std::uint8_t ttl = 7;
    std::uint32_t next_seq = 0;
    MessageCache cache{64};
    Rng rng;
    std::deque<Job> local_queue;
    std::deque<Job> relay_queue;
    bool bearer_busy = false;
    bool is_lpn = false;
    bool awake = true;
    std::optional<NodeId> friend_node;
    std::uint64_t relayed = 0;
    std::uint64_t delivered = 0;
  };

  void on_frame(NodeId node, const Frame& frame);
  void serve_bearer(NodeId node);
  void run_event(NodeId node, std::shared_ptr<const MeshNetworkPdu> pdu, unsigned event,
                 SimTime base, SimTime earliest);
  void deliver(NodeId node, const MeshNetworkPdu& pdu);

  Simulator& sim_;
  Medium& medium_;
  MeshConfig config_;
  std::vector<Node> nodes_;
  std::map<NodeId, FriendQueue> friend_queues_;  // keyed by LPN
  std::vector<DeliveryObserver> delivery_;
  std::vector<RelayObserver> relay_;
};

}  // namespace btsim::btmesh
