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

#include <any>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>

#include "btsim/sim/medium.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"

namespace btsim {

// Unslotted IEEE 802.15.4 CSMA-CA with acknowledged retransmission.
struct CsmaConfig {
  Duration backoff_slot = 320;
  unsigned min_be = 3;
  unsigned max_be = 5;
  unsigned max_csma_backoffs = 4;
  unsigned max_frame_retries = 4;
  Duration cca_duration = 128;
  Duration turnaround = 192;
  Duration ack_timeout = 864;  // measured from the end of the data frame
  std::uint32_t overhead_bytes = 11;
  std::uint32_t ack_bytes = 11;
  // Abandon the frame when every CCA of an attempt reports busy. When false,
  // the attempt restarts its backoff sequence instead.
  bool drop_on_channel_access_failure = true;
  std::size_t queue_limit = 64;
};

enum class TxStatus : std::uint8_t {
  kAcked,
  kFailed,                // no ack after 1 + max_frame_retries attempts
  kChannelAccessFailure,  // CCA busy on every backoff
  kSent,                  // broadcast, no ack expected
  kUnavailable,           // sleep gate refused the transmission
  kQueueFull,
};

struct TxReport {
  TxStatus status;
  unsigned attempts;
};

class CsmaMac {
 public:
  using Done = std::function<void(const TxReport&)>;
  using ReceiveHandler = std::function<void(NodeId from, const std::any& payload)>;
  // Whether `node` may take part in a frame exchange occupying [from, to].
  using Availability = std::function<bool(NodeId node, SimTime from, SimTime to)>;

  CsmaMac(Simulator& sim, Medium& medium, NodeId self, CsmaConfig config, Rng rng);
  CsmaMac(const CsmaMac&) = delete;
  CsmaMac& operator=(const CsmaMac&) = delete;

  NodeId self() const { return self_; }
  const CsmaConfig& config() const { return config_; }

  // Queues a frame carrying `payload_bytes` of network data. `network_retx`
  // marks every attempt of the frame as a retransmission for traffic tallies.
  void send(NodeId destination, std::uint32_t payload_bytes, std::any payload,
            bool network_retx = false, Done done = {});

  void set_receive_handler(ReceiveHandler handler) { on_receive_ = std::move(handler); }
  void set_availability(Availability gate) { gate_ = std::move(gate); }

  std::size_t queued() const { return queue_.size() + (busy_ ? 1 : 0); }
  std::uint64_t attempts_started() const { return attempts_started_; }

  // Called by the owner for every frame the medium delivers to this node.
  void on_frame(const Frame& frame);

 private:
  struct Pending {
    NodeId destination;
    std::uint32_t payload_bytes;
    std::any payload;
    bool network_retx;
    Done done;
    unsigned attempt = 0;
    std::uint8_t dsn = 0;
  };

  void start_next();
  void start_attempt();
  void backoff(unsigned nb, unsigned be);
  void clear_channel_assessment(unsigned nb, unsigned be);
  void transmit_now();
  void on_ack_timeout();
  void complete(TxStatus status);
  void send_ack(NodeId to, std::uint8_t dsn);
  bool available(NodeId node, SimTime from, SimTime to) const;

  Simulator& sim_;
  Medium& medium_;
  NodeId self_;
  CsmaConfig config_;
  Rng rng_;
  ReceiveHandler on_receive_;
  Availability gate_;

  std::deque<Pending> queue_;
  Pending current_{};
  bool busy_ = false;
  bool awaiting_ack_ = false;
  EventHandle ack_timer_ = kNoEvent;
  SimTime radio_busy_until_ = 0;
  std::uint8_t next_dsn_ = 0;
  std::unordered_map<NodeId, std::uint8_t> last_dsn_from_;
  std::uint64_t attempts_started_ = 0;
};

}  // namespace btsim
