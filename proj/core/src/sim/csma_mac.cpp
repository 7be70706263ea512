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

#include "btsim/sim/csma_mac.hpp"

#include <algorithm>

namespace btsim {

CsmaMac::CsmaMac(Simulator& sim, Medium& medium, NodeId self, CsmaConfig config, Rng rng)
    : sim_(sim), medium_(medium), self_(self), config_(config), rng_(std::move(rng)) {}

void CsmaMac::send(NodeId destination, std::uint32_t payload_bytes, std::any payload,
                   bool network_retx, Done done) {
  if (queue_.size() >= config_.queue_limit) {
    if (done) done(TxReport{TxStatus::kQueueFull, 0});
    return;
  }
  queue_.push_back(Pending{destination, payload_bytes, std::move(payload), network_retx,
                           std::move(done)});
  if (!busy_) start_next();
}

void CsmaMac::start_next() {
  if (queue_.empty()) {
    busy_ = false;
    return;
  }
  busy_ = true;
  current_ = std::move(queue_.front());
  queue_.pop_front();
  current_.attempt = 0;
  current_.dsn = next_dsn_++;
  start_attempt();
}

void CsmaMac::start_attempt() {
  ++current_.attempt;
  backoff(0, config_.min_be);
}

void CsmaMac::backoff(unsigned nb, unsigned be) {
  const std::uint64_t slots = rng_.uniform(0, (1ull << be) - 1);
  sim_.schedule_in(slots * config_.backoff_slot, [this, nb, be] { clear_channel_assessment(nb, be); });
}

void CsmaMac::clear_channel_assessment(unsigned nb, unsigned be) {
  const SimTime cca_start = sim_.now();
  sim_.schedule_in(config_.cca_duration, [this, nb, be, cca_start] {
    const bool busy = radio_busy_until_ > cca_start ||
                      medium_.channel_busy(self_, kDot154Channel, cca_start, sim_.now());
    if (!busy) {
      transmit_now();
      return;
    }
    const unsigned next_nb = nb + 1;
    if (next_nb > config_.max_csma_backoffs) {
      if (config_.drop_on_channel_access_failure) {
        complete(TxStatus::kChannelAccessFailure);
      } else {
        backoff(0, config_.min_be);
      }
      return;
    }
    backoff(next_nb, std::min(be + 1, config_.max_be));
  });
}

bool CsmaMac::available(NodeId node, SimTime from, SimTime to) const {
  return !gate_ || gate_(node, from, to);
}

void CsmaMac::transmit_now() {
  Frame frame;
  frame.transmitter = self_;
  frame.destination = current_.destination;
  frame.channel = kDot154Channel;
  frame.kind = FrameKind::kDot154Data;
  frame.length_bytes = current_.payload_bytes + config_.overhead_bytes;
  frame.start = sim_.now() + config_.turnaround;
  frame.retransmission = current_.network_retx || current_.attempt > 1;
  frame.sequence = current_.dsn;
  frame.payload = current_.payload;

  const SimTime exchange_end = frame.end() + config_.ack_timeout;
  if (!available(self_, frame.start, exchange_end) ||
      (current_.destination != kBroadcastNode &&
       !available(current_.destination, frame.start, exchange_end))) {
    complete(TxStatus::kUnavailable);
    return;
  }

  radio_busy_until_ = frame.end();
  ++attempts_started_;
  const SimTime end = frame.end();
  const bool broadcast = current_.destination == kBroadcastNode;
  medium_.transmit(std::move(frame));
  if (broadcast) {
    sim_.schedule(end, [this] { complete(TxStatus::kSent); });
    return;
  }
  awaiting_ack_ = true;
  ack_timer_ = sim_.schedule(end + config_.ack_timeout, [this] { on_ack_timeout(); });
}

void CsmaMac::on_ack_timeout() {
  awaiting_ack_ = false;
  ack_timer_ = kNoEvent;
  if (current_.attempt > config_.max_frame_retries) {
    complete(TxStatus::kFailed);
    return;
  }
  start_attempt();
}

void CsmaMac::complete(TxStatus status) {
  Done done = std::move(current_.done);
  const TxReport report{status, current_.attempt};
  current_ = Pending{};
  if (done) done(report);
  start_next();
}

void CsmaMac::send_ack(NodeId to, std::uint8_t dsn) {
  const SimTime start = sim_.now() + config_.turnaround;
  if (radio_busy_until_ > start) return;
  Frame ack;
  ack.transmitter = self_;
  ack.destination = to;
  ack.channel = kDot154Channel;
  ack.kind = FrameKind::kDot154Ack;
  ack.length_bytes = config_.ack_bytes;
  ack.start = start;
  ack.sequence = dsn;
  radio_busy_until_ = ack.end();
  medium_.transmit(std::move(ack));
}

void CsmaMac::on_frame(const Frame& frame) {
  if (frame.kind == FrameKind::kDot154Ack) {
    if (awaiting_ack_ && frame.destination == self_ && frame.transmitter == current_.destination &&
        frame.sequence == current_.dsn) {
      awaiting_ack_ = false;
      sim_.cancel(ack_timer_);
      ack_timer_ = kNoEvent;
      complete(TxStatus::kAcked);
    }
    return;
  }
  if (frame.kind != FrameKind::kDot154Data) return;
  if (frame.destination == self_) {
    send_ack(frame.transmitter, frame.sequence);
    auto it = last_dsn_from_.find(frame.transmitter);
    if (it != last_dsn_from_.end() && it->second == frame.sequence) return;  // duplicate
    last_dsn_from_[frame.transmitter] = frame.sequence;
  } else if (frame.destination != kBroadcastNode) {
    return;
  }
  if (on_receive_) on_receive_(frame.transmitter, frame.payload);
}

}  // namespace btsim
