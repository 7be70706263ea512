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

#include "btsim/btmesh/mesh_network.hpp"

#include <algorithm>
#include <string>

#include "btsim/sim/error.hpp"

namespace btsim::btmesh {
namespace {

constexpr std::uint64_t kMeshStream = 0xb7e5;

using PduPtr = std::shared_ptr<const MeshNetworkPdu>;

}  // namespace

MeshNetwork::MeshNetwork(Simulator& sim, Medium& medium, MeshConfig config, std::uint64_t seed)
    : sim_(sim), medium_(medium), config_(std::move(config)) {
  if (config_.adv_events == 0) throw ConfigError("adv_events must be at least 1");
  nodes_.resize(medium_.node_count());
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    Node& n = nodes_[id];
    n.address = MeshAddress::for_node(id);
    n.relay = config_.relay;
    n.ttl = config_.default_ttl;
    n.cache = MessageCache(config_.cache_capacity);
    n.rng = Rng::derive(seed, {kMeshStream, id});
    medium_.set_scan_rotation(id, config_.scan_window);
    medium_.set_receive_handler(id, [this, id](const Frame& frame) { on_frame(id, frame); });
  }
}

std::optional<NodeId> MeshNetwork::node_of(MeshAddress unicast) const {
  if (!unicast.is_unicast()) return std::nullopt;
  const NodeId id = unicast.value() - 1u;
  if (id >= nodes_.size()) return std::nullopt;
  return id;
}

void MeshNetwork::subscribe(NodeId node, MeshAddress address) {
  if (address.kind() == AddressKind::kUnassigned) {
    throw ConfigError("cannot subscribe to the unassigned address");
  }
  nodes_.at(node).subscriptions.insert(address);
}

bool MeshNetwork::subscribed(NodeId node, MeshAddress dst) const {
  const Node& n = nodes_.at(node);
  return dst == n.address || dst == kAllNodes || n.subscriptions.contains(dst);
}

void MeshNetwork::set_relay(NodeId node, bool enabled) { nodes_.at(node).relay = enabled; }

void MeshNetwork::set_ttl(NodeId node, std::uint8_t ttl) {
  if (ttl > kMaxTtl) throw ConfigError("ttl above 127");
  nodes_.at(node).ttl = ttl;
}

std::uint32_t MeshNetwork::publish(NodeId node, MeshAddress dst, std::vector<std::uint8_t> payload,
                                   bool ack_required) {
  Node& n = nodes_.at(node);
  if (n.next_seq > kMaxSeq) throw ProtocolError("sequence number space exhausted");
  MeshNetworkPdu pdu;
  pdu.src = n.address;
  pdu.dst = dst;
  pdu.ttl = n.ttl;
  pdu.seq = n.next_seq++;
  pdu.payload = std::move(payload);
  pdu.ack_required = ack_required;
  n.cache.insert(key_of(pdu));
  const std::uint32_t seq = pdu.seq;
  advertise(node, std::move(pdu), true);
  return seq;
}

void MeshNetwork::advertise(NodeId node, MeshNetworkPdu pdu, bool local_origin) {
  if (pdu.encoded_size() > kMaxNetworkPduBytes) {
    throw ProtocolError("payload of " + std::to_string(pdu.payload.size()) +
                        " bytes needs segmentation");
  }
  Node& n = nodes_.at(node);
  Job job{std::make_shared<const MeshNetworkPdu>(std::move(pdu))};
  if (local_origin && config_.local_first) {
    n.local_queue.push_back(std::move(job));
  } else {
    n.relay_queue.push_back(std::move(job));
  }
  if (!n.bearer_busy) serve_bearer(node);
}

std::size_t MeshNetwork::bearer_backlog(NodeId node) const {
  const Node& n = nodes_.at(node);
  return n.local_queue.size() + n.relay_queue.size() + (n.bearer_busy ? 1 : 0);
}

void MeshNetwork::serve_bearer(NodeId node) {
  Node& n = nodes_[node];
  std::deque<Job>* source = !n.local_queue.empty() ? &n.local_queue : &n.relay_queue;
  if (source->empty()) {
    n.bearer_busy = false;
    return;
  }
  n.bearer_busy = true;
  PduPtr pdu = std::move(source->front().pdu);
  source->pop_front();
  run_event(node, std::move(pdu), 0, sim_.now(), sim_.now());
}

void MeshNetwork::run_event(NodeId node, PduPtr pdu, unsigned event, SimTime base,
                            SimTime earliest) {
  Node& n = nodes_[node];
  const Duration jitter = config_.adv_jitter == 0 ? 0 : n.rng.uniform(0, config_.adv_jitter);
  const SimTime start = std::max(base + event * config_.adv_interval + jitter, earliest);
  const std::uint32_t length =
      static_cast<std::uint32_t>(pdu->encoded_size()) + config_.frame_overhead_bytes;
  const Duration air = airtime_of(FrameKind::kMeshAdv, length);
  const SimTime event_end = start + air * kAdvertisingChannels.size();

  sim_.schedule(start, [this, node, pdu, event, length, air, start] {
    for (std::size_t c = 0; c < kAdvertisingChannels.size(); ++c) {
      Frame frame;
      frame.transmitter = node;
      frame.channel = kAdvertisingChannels[c];
      frame.kind = FrameKind::kMeshAdv;
      frame.length_bytes = length;
      frame.start = start + c * air;
      frame.retransmission = !(event == 0 && c == 0);
      frame.payload = pdu;
      medium_.transmit(std::move(frame));
    }
  });

  if (event + 1 < config_.adv_events) {
    run_event(node, std::move(pdu), event + 1, base, event_end);
  } else {
    sim_.schedule(event_end, [this, node] { serve_bearer(node); });
  }
}

void MeshNetwork::on_frame(NodeId node, const Frame& frame) {
  if (frame.kind != FrameKind::kMeshAdv) return;
  const auto* pdu = std::any_cast<PduPtr>(&frame.payload);
  if (pdu == nullptr || !*pdu) return;
  on_mesh_frame(node, **pdu);
}

RxAction MeshNetwork::on_mesh_frame(NodeId node, const MeshNetworkPdu& pdu) {
  Node& n = nodes_.at(node);
  if (!n.cache.insert(key_of(pdu))) return RxAction::kDropped;

  bool delivered = false;
  if (subscribed(node, pdu.dst)) {
    deliver(node, pdu);
    delivered = true;
  }

  for (auto& [lpn, queue] : friend_queues_) {
    if (queue.friend_node() == node && !nodes_[lpn].awake && subscribed(lpn, pdu.dst)) {
      friend_enqueue(node, lpn, pdu);
    }
  }

  bool relayed = false;
  if (n.relay && pdu.ttl >= 2 && pdu.src != n.address && pdu.dst != n.address) {
    MeshNetworkPdu copy = pdu;
    copy.ttl = static_cast<std::uint8_t>(pdu.ttl - 1);
    ++n.relayed;
    for (const auto& observer : relay_) observer(node, copy);
    advertise(node, std::move(copy), false);
    relayed = true;
  }

  if (delivered && relayed) return RxAction::kBoth;
  if (delivered) return RxAction::kDelivered;
  if (relayed) return RxAction::kRelayed;
  return RxAction::kDropped;
}

void MeshNetwork::deliver(NodeId node, const MeshNetworkPdu& pdu) {
  Node& n = nodes_[node];
  ++n.delivered;
  for (const auto& observer : delivery_) observer(node, pdu, sim_.now());
  if (config_.auto_reply && pdu.ack_required) {
    send_ack_reply(node, pdu, config_.reply_payload);
  }
}

std::uint32_t MeshNetwork::send_ack_reply(NodeId node, const MeshNetworkPdu& original,
                                          std::vector<std::uint8_t> payload) {
  if (!original.ack_required) throw ProtocolError("reply to a message that requested none");
  if (!original.src.is_unicast()) throw ProtocolError("reply target is not a unicast address");
  return publish(node, original.src, std::move(payload), false);
}

void MeshNetwork::establish_friendship(NodeId friend_node, NodeId lpn) {
  if (friend_node == lpn) throw ProtocolError("a node cannot befriend itself");
  if (friend_node >= nodes_.size() || lpn >= nodes_.size()) {
    throw ProtocolError("friendship references unknown node");
  }
  if (friend_queues_.contains(lpn)) throw ProtocolError("low-power node already has a friend");
  Node& n = nodes_[lpn];
  n.is_lpn = true;
  n.relay = false;
  n.friend_node = friend_node;
  friend_queues_.emplace(lpn, FriendQueue(friend_node, lpn, config_.friend_queue_capacity));
}

std::optional<NodeId> MeshNetwork::friend_of(NodeId lpn) const {
  return nodes_.at(lpn).friend_node;
}

void MeshNetwork::set_lpn_awake(NodeId lpn, bool awake) {
  Node& n = nodes_.at(lpn);
  if (!n.is_lpn) throw ProtocolError("node is not a low-power node");
  n.awake = awake;
  medium_.set_radio_enabled(lpn, awake);
}

bool MeshNetwork::lpn_awake(NodeId lpn) const { return nodes_.at(lpn).awake; }

bool MeshNetwork::friend_enqueue(NodeId friend_node, NodeId lpn, const MeshNetworkPdu& pdu) {
  auto it = friend_queues_.find(lpn);
  if (it == friend_queues_.end() || it->second.friend_node() != friend_node) {
    throw ProtocolError("no friendship between these nodes");
  }
  if (nodes_[lpn].awake || !subscribed(lpn, pdu.dst)) return false;
  it->second.push(pdu);
  return true;
}

std::size_t MeshNetwork::lpn_poll(NodeId lpn) {
  auto it = friend_queues_.find(lpn);
  if (it == friend_queues_.end()) throw ProtocolError("poll from a node without a friend");
  if (!nodes_[lpn].awake) throw ProtocolError("poll from a sleeping low-power node");
  std::vector<MeshNetworkPdu> entries = it->second.drain();
  const NodeId friend_node = it->second.friend_node();
  for (MeshNetworkPdu& pdu : entries) {
    pdu.ttl = 0;
    advertise(friend_node, std::move(pdu), true);
  }
  return entries.size();
}

const FriendQueue& MeshNetwork::friend_queue(NodeId lpn) const {
  auto it = friend_queues_.find(lpn);
  if (it == friend_queues_.end()) throw ProtocolError("node has no friend");
  return it->second;
}

}  // namespace btsim::btmesh
