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
#include <optional>
#include <unordered_map>
#include <vector>

#include "btsim/ndn/content_store.hpp"
#include "btsim/ndn/face.hpp"
#include "btsim/ndn/fib.hpp"
#include "btsim/ndn/packet.hpp"
#include "btsim/ndn/pit.hpp"
#include "btsim/sim/csma_mac.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"

namespace btsim::ndn {

struct ForwarderConfig {
  std::size_t cs_capacity = 30;
  CsPolicy cs_policy = CsPolicy::kLru;
  unsigned max_retries = 4;
  Duration retry_interval = sec(1);
  Duration interest_lifetime = sec(10);
  // When false only entries with a local consumer run retransmission timers.
  bool relay_retransmit = true;
};

// Per-request overrides of the forwarder defaults.
struct InterestOptions {
  std::optional<Duration> lifetime;
  std::optional<unsigned> max_retries;
  std::optional<Duration> retry_interval;
};

enum class InterestAction : std::uint8_t { kDataReturned, kForwarded, kAggregated, kDropped };
enum class PitTimerAction : std::uint8_t { kRetransmitted, kExpired, kNone };
enum class ExpressOutcome : std::uint8_t { kSatisfiedFromCache, kPending, kUnroutable };

// Answers an Interest reaching a registered prefix. An empty result leaves
// the Interest pending.
using Producer = std::function<std::optional<Data>(const Interest&)>;
using SendObserver = std::function<void(FaceId face, const Packet& packet, bool retransmission)>;

struct ForwarderStats {
  std::uint64_t interests_received = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t interest_retransmissions = 0;
  std::uint64_t data_received = 0;
  std::uint64_t data_sent = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t aggregated = 0;
  std::uint64_t dropped_duplicate = 0;
  std::uint64_t dropped_unroutable = 0;
  std::uint64_t unsolicited_data = 0;
  std::uint64_t pit_expired = 0;
};

class Forwarder {
 public:
  Forwarder(Simulator& sim, CsmaMac& mac, ForwarderConfig config, Rng rng);
  Forwarder(const Forwarder&) = delete;
  Forwarder& operator=(const Forwarder&) = delete;

  NodeId self() const { return mac_.self(); }
  const ForwarderConfig& config() const { return config_; }

  FaceId add_unicast_face(NodeId neighbor);
  FaceId add_broadcast_face();
  // Unicast face toward `neighbor`, or the broadcast face if there is none.
  std::optional<FaceId> face_to(NodeId neighbor) const;
  const Face& face(FaceId id) const { return faces_.at(id); }
  std::size_t face_count() const { return faces_.size(); }

  void add_route(const Name& prefix, FaceId face) { fib_.add_route(prefix, face); }
  // Routes `prefix` to the application face and serves it with `producer`.
  void register_producer(const Name& prefix, Producer producer);

  // Local consumer request. `callback` runs exactly once: synchronously for
  // cache hits and unroutable names, otherwise on Data arrival or expiry.
  ExpressOutcome express_interest(const Name& name, RequestCallback callback,
                                  InterestOptions options = {});

  InterestAction on_interest(const Interest& interest, FaceId in_face);
  // Returns the number of downstream faces the Data was sent to.
  std::size_t on_data(const Data& data, FaceId in_face);
  // Retransmits while retries remain inside the lifetime, else expires.
  PitTimerAction pit_timer_fire(const Name& name);

  void add_send_observer(SendObserver observer) { send_observers_.push_back(std::move(observer)); }

  ContentStore& content_store() { return cs_; }
  const ContentStore& content_store() const { return cs_; }
  const Pit& pit() const { return pit_; }
  const Fib& fib() const { return fib_; }
  const ForwarderStats& stats() const { return stats_; }

 private:
  InterestAction process_interest(const Interest& interest, FaceId in_face,
                                  const InterestOptions& options, LocalRequest* request);
  void forward(PitEntry& entry, std::uint32_t nonce, bool retransmission);
  void arm_retry(PitEntry& entry);
  bool wants_retry(const PitEntry& entry) const;
  void expire(const Name& name);
  void send(FaceId face, const Packet& packet, bool retransmission);
  void deliver_to_app(const Data& data);
  void complete_requests(const Name& name, std::vector<LocalRequest>& requests, RequestStatus status,
                         bool from_cache, unsigned retransmissions);
  void on_frame(NodeId from, const std::any& payload);
  std::uint32_t fresh_nonce();

  Simulator& sim_;
  CsmaMac& mac_;
  ForwarderConfig config_;
  Rng rng_;
  std::vector<Face> faces_;
  std::unordered_map<NodeId, FaceId> unicast_by_neighbor_;
  std::optional<FaceId> broadcast_face_;
  Fib fib_;
  Pit pit_;
  ContentStore cs_;
  std::vector<std::pair<Name, Producer>> producers_;
  std::vector<SendObserver> send_observers_;
  ForwarderStats stats_;
};

}  // namespace btsim::ndn
