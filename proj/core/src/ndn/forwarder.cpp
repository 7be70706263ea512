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

#include "btsim/ndn/forwarder.hpp"

#include <algorithm>
#include <memory>

#include "btsim/sim/error.hpp"

namespace btsim::ndn {

Forwarder::Forwarder(Simulator& sim, CsmaMac& mac, ForwarderConfig config, Rng rng)
    : sim_(sim),
      mac_(mac),
      config_(config),
      rng_(std::move(rng)),
      cs_(config.cs_capacity, config.cs_policy) {
  faces_.push_back({kAppFace, FaceKind::kApp, mac.self()});
  mac_.set_receive_handler([this](NodeId from, const std::any& p) { on_frame(from, p); });
}

FaceId Forwarder::add_unicast_face(NodeId neighbor) {
  if (auto it = unicast_by_neighbor_.find(neighbor); it != unicast_by_neighbor_.end()) {
    return it->second;
  }
  auto id = static_cast<FaceId>(faces_.size());
  faces_.push_back({id, FaceKind::kUnicast, neighbor});
  unicast_by_neighbor_.emplace(neighbor, id);
  return id;
}

FaceId Forwarder::add_broadcast_face() {
  if (broadcast_face_) return *broadcast_face_;
  auto id = static_cast<FaceId>(faces_.size());
  faces_.push_back({id, FaceKind::kBroadcast, kBroadcastNode});
  broadcast_face_ = id;
  return id;
}

std::optional<FaceId> Forwarder::face_to(NodeId neighbor) const {
  if (auto it = unicast_by_neighbor_.find(neighbor); it != unicast_by_neighbor_.end()) {
    return it->second;
  }
  return broadcast_face_;
}

void Forwarder::register_producer(const Name& prefix, Producer producer) {
  fib_.add_route(prefix, kAppFace);
  producers_.emplace_back(prefix, std::move(producer));
}

std::uint32_t Forwarder::fresh_nonce() { return rng_.next_u32(); }

ExpressOutcome Forwarder::express_interest(const Name& name, RequestCallback callback,
                                           InterestOptions options) {
  if (name.empty()) throw ProtocolError("Interest name must not be empty");
  Interest interest{name, fresh_nonce(), options.lifetime.value_or(config_.interest_lifetime)};
  LocalRequest request{sim_.now(), std::move(callback)};
  switch (process_interest(interest, kAppFace, options, &request)) {
    case InterestAction::kDataReturned: {
      std::vector<LocalRequest> one{std::move(request)};
      complete_requests(name, one, RequestStatus::kSatisfied, true, 0);
      return ExpressOutcome::kSatisfiedFromCache;
    }
    case InterestAction::kDropped: {
      std::vector<LocalRequest> one{std::move(request)};
      complete_requests(name, one, RequestStatus::kUnroutable, false, 0);
      return ExpressOutcome::kUnroutable;
    }
    default:
      return ExpressOutcome::kPending;
  }
}

InterestAction Forwarder::on_interest(const Interest& interest, FaceId in_face) {
  return process_interest(interest, in_face, {}, nullptr);
}

InterestAction Forwarder::process_interest(const Interest& interest, FaceId in_face,
                                           const InterestOptions& options,
                                           LocalRequest* request) {
  if (in_face != kAppFace) ++stats_.interests_received;

  if (const Data* cached = cs_.find(interest.name)) {
    ++stats_.cs_hits;
    if (in_face != kAppFace) send(in_face, *cached, false);
    return InterestAction::kDataReturned;
  }

  if (PitEntry* entry = pit_.find(interest.name)) {
    if (entry->nonces.contains(interest.nonce)) {
      ++stats_.dropped_duplicate;
      return InterestAction::kDropped;
    }
    entry->nonces.insert(interest.nonce);
    if (request) entry->local_requests.push_back(std::move(*request));
    auto rec = std::find_if(entry->in_records.begin(), entry->in_records.end(),
                            [in_face](const InRecord& r) { return r.face == in_face; });
    if (rec != entry->in_records.end()) {
      rec->nonce = interest.nonce;
      forward(*entry, interest.nonce, true);
      return InterestAction::kForwarded;
    }
    entry->in_records.push_back({in_face, interest.nonce});
    ++stats_.aggregated;
    if (entry->retry_timer == kNoEvent && wants_retry(*entry)) arm_retry(*entry);
    return InterestAction::kAggregated;
  }

  const FibEntry* route = fib_.longest_prefix_match(interest.name);
  std::vector<FaceId> out;
  if (route) {
    for (FaceId f : route->faces) {
      if (f != in_face) out.push_back(f);
    }
  }
  if (out.empty()) {
    ++stats_.dropped_unroutable;
    return InterestAction::kDropped;
  }

  PitEntry fresh;
  fresh.name = interest.name;
  fresh.in_records.push_back({in_face, interest.nonce});
  fresh.nonces.insert(interest.nonce);
  fresh.out_faces = std::move(out);
  if (request) fresh.local_requests.push_back(std::move(*request));
  fresh.max_retries = options.max_retries.value_or(config_.max_retries);
  fresh.retry_interval = options.retry_interval.value_or(config_.retry_interval);
  fresh.lifetime = interest.lifetime;
  fresh.created = sim_.now();
  PitEntry& entry = pit_.insert(std::move(fresh));
  Name key = entry.name;
  entry.expiry_timer = sim_.schedule_in(entry.lifetime, [this, key] { expire(key); });
  if (wants_retry(entry)) arm_retry(entry);
  forward(entry, interest.nonce, false);
  return InterestAction::kForwarded;
}

bool Forwarder::wants_retry(const PitEntry& entry) const {
  if (entry.max_retries == 0 || entry.retry_interval == 0) return false;
  return config_.relay_retransmit || !entry.local_requests.empty();
}

void Forwarder::arm_retry(PitEntry& entry) {
  Name key = entry.name;
  entry.retry_timer =
      sim_.schedule_in(entry.retry_interval, [this, key] { pit_timer_fire(key); });
}

void Forwarder::forward(PitEntry& entry, std::uint32_t nonce, bool retransmission) {
  const SimTime deadline = entry.created + entry.lifetime;
  Interest outgoing{entry.name, nonce, deadline > sim_.now() ? deadline - sim_.now() : 0};
  // The entry may change under a producer callback.
  const std::vector<FaceId> faces = entry.out_faces;
  for (FaceId f : faces) {
    if (f != kAppFace) {
      send(f, outgoing, retransmission);
      continue;
    }
    const Producer* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, producer] : producers_) {
      if (prefix.is_prefix_of(outgoing.name) && (!best || prefix.size() >= best_len)) {
        best = &producer;
        best_len = prefix.size();
      }
    }
    if (!best) continue;
    if (std::optional<Data> answer = (*best)(outgoing)) {
      sim_.schedule(sim_.now(), [this, d = std::move(*answer)] { on_data(d, kAppFace); });
    }
  }
}

PitTimerAction Forwarder::pit_timer_fire(const Name& name) {
  PitEntry* entry = pit_.find(name);
  if (!entry) return PitTimerAction::kNone;
  sim_.cancel(entry->retry_timer);
  entry->retry_timer = kNoEvent;
  if (entry->retransmit_count < entry->max_retries &&
      sim_.now() < entry->created + entry->lifetime) {
    ++entry->retransmit_count;
    ++stats_.interest_retransmissions;
    const std::uint32_t nonce = fresh_nonce();
    entry->nonces.insert(nonce);
    arm_retry(*entry);
    forward(*entry, nonce, true);
    return PitTimerAction::kRetransmitted;
  }
  expire(name);
  return PitTimerAction::kExpired;
}

void Forwarder::expire(const Name& name) {
  if (!pit_.find(name)) return;
  PitEntry entry = pit_.erase(name);
  sim_.cancel(entry.retry_timer);
  sim_.cancel(entry.expiry_timer);
  ++stats_.pit_expired;
  complete_requests(entry.name, entry.local_requests, RequestStatus::kTimedOut, false,
                    entry.retransmit_count);
}

std::size_t Forwarder::on_data(const Data& data, FaceId in_face) {
  if (in_face != kAppFace) ++stats_.data_received;
  if (!pit_.find(data.name)) {
    ++stats_.unsolicited_data;
    return 0;
  }
  PitEntry entry = pit_.erase(data.name);
  sim_.cancel(entry.retry_timer);
  sim_.cancel(entry.expiry_timer);
  cs_.insert(data);
  std::size_t delivered = 0;
  for (const InRecord& r : entry.in_records) {
    if (r.face == kAppFace || r.face == in_face) continue;
    send(r.face, data, false);
    ++delivered;
  }
  if (!entry.local_requests.empty()) {
    ++delivered;
    complete_requests(entry.name, entry.local_requests, RequestStatus::kSatisfied, false,
                      entry.retransmit_count);
  }
  return delivered;
}

void Forwarder::complete_requests(const Name& name, std::vector<LocalRequest>& requests, RequestStatus status,
                                  bool from_cache, unsigned retransmissions) {
  const SimTime now = sim_.now();
  for (LocalRequest& r : requests) {
    if (!r.callback) continue;
    RequestResult result;
    result.name = name;
    result.status = status;
    result.requested_at = r.requested_at;
    result.completed_at = now;
    result.from_local_cache = from_cache;
    result.retransmissions = retransmissions;
    r.callback(result);
  }
}

void Forwarder::send(FaceId face_id, const Packet& packet, bool retransmission) {
  const Face& f = faces_.at(face_id);
  for (const auto& observer : send_observers_) observer(face_id, packet, retransmission);
  const bool is_interest = std::holds_alternative<Interest>(packet);
  if (is_interest) {
    ++stats_.interests_sent;
  } else {
    ++stats_.data_sent;
  }
  if (f.kind == FaceKind::kApp) return;
  const std::size_t bytes = std::visit([](const auto& p) { return p.wire_size(); }, packet);
  const NodeId dst = f.kind == FaceKind::kBroadcast ? kBroadcastNode : f.neighbor;
  mac_.send(dst, static_cast<std::uint32_t>(bytes), std::make_shared<const Packet>(packet),
            retransmission);
}

void Forwarder::on_frame(NodeId from, const std::any& payload) {
  const auto* packet = std::any_cast<std::shared_ptr<const Packet>>(&payload);
  if (!packet || !*packet) return;
  const std::optional<FaceId> face = face_to(from);
  if (!face) return;
  const Packet& p = **packet;
  if (const auto* interest = std::get_if<Interest>(&p)) {
    on_interest(*interest, *face);
  } else {
    on_data(std::get<Data>(p), *face);
  }
}

}  // namespace btsim::ndn
