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

#include "btsim/sim/medium.hpp"

#include <string>

#include "btsim/sim/error.hpp"

namespace btsim {
namespace {

constexpr std::uint64_t kScanStream = 0x5ca9;
constexpr std::uint64_t kLossStream = 0x1055;
// Frames older than this (past their end) can no longer overlap a frame that
// is still being resolved; the longest 802.15.4 frame lasts ~4.3 ms.
constexpr Duration kRetention = msec(20);

}  // namespace

Medium::Medium(Simulator& sim, TopologyMatrix visibility, MediumConfig config, std::uint64_t seed)
    : sim_(sim),
      visibility_(std::move(visibility)),
      interference_(visibility_),
      config_(config),
      seed_(seed),
      loss_rng_(Rng::derive(seed, {kLossStream})),
      receivers_(visibility_.size()),
      handlers_(visibility_.size()),
      own_tx_(visibility_.size()),
      tallies_(visibility_.size()) {}

void Medium::set_interference(const TopologyMatrix& extra) {
  interference_ = visibility_.united(extra);
}

void Medium::set_receive_handler(NodeId node, ReceiveHandler handler) {
  handlers_.at(node) = std::move(handler);
}

void Medium::set_fixed_channel(NodeId node, ChannelId channel) {
  auto& r = receivers_.at(node);
  r.rotating = false;
  r.fixed = channel;
}

void Medium::set_scan_rotation(NodeId node, Duration window) {
  if (window == 0 || window == kNever) {
    set_scan_rotation(node, window, 0);
    return;
  }
  Rng rng = Rng::derive(seed_, {kScanStream, node});
  set_scan_rotation(node, window, rng.uniform(0, 3 * window - 1));
}

void Medium::set_scan_rotation(NodeId node, Duration window, Duration phase) {
  auto& r = receivers_.at(node);
  if (window == 0 || window == kNever) {
    r.rotating = false;
    r.fixed = kAdvertisingChannels[0];
    r.window = 0;
    r.phase = 0;
    return;
  }
  r.rotating = true;
  r.window = window;
  r.phase = phase % (3 * window);
}

std::optional<ChannelId> Medium::listening_channel(NodeId node, SimTime at) const {
  const auto& r = receivers_.at(node);
  if (!r.radio_on) return std::nullopt;
  if (!r.rotating) return r.fixed;
  return kAdvertisingChannels[((at + r.phase) / r.window) % 3];
}

void Medium::set_radio_enabled(NodeId node, bool enabled) {
  auto& r = receivers_.at(node);
  if (r.radio_on == enabled) return;
  r.radio_on = enabled;
  r.last_radio_toggle = sim_.now();
}

bool Medium::interferes(NodeId transmitter, NodeId receiver) const {
  return interference_.visible(transmitter, receiver);
}

bool Medium::listens_throughout(NodeId node, ChannelId channel, SimTime from, SimTime to) const {
  const auto& r = receivers_[node];
  if (!r.radio_on || r.last_radio_toggle > from) return false;
  if (!r.rotating) return r.fixed == channel;
  const SimTime last = to > from ? to - 1 : from;
  const std::uint64_t dwell_from = (from + r.phase) / r.window;
  const std::uint64_t dwell_to = (last + r.phase) / r.window;
  return dwell_from == dwell_to && kAdvertisingChannels[dwell_from % 3] == channel;
}

bool Medium::transmitting_during(NodeId node, SimTime from, SimTime to) const {
  for (const auto& tx : own_tx_[node]) {
    if (tx.start < to && from < tx.end) return true;
  }
  return false;
}

bool Medium::channel_busy(NodeId node, ChannelId channel, SimTime from, SimTime to) const {
  for (const auto& f : on_air_[channel]) {
    if (f.transmitter == node) continue;
    if (f.start <= to && from < f.end && interferes(f.transmitter, node)) return true;
  }
  return false;
}

FrameId Medium::transmit(Frame frame, Completion done) {
  if (frame.start < sim_.now()) {
    throw SimulationError("frame start " + std::to_string(frame.start) + "us is in the past");
  }
  if (frame.length_bytes == 0 || frame.airtime() == 0) {
    throw SimulationError("zero-airtime frame");
  }
  if (frame.transmitter >= node_count()) throw SimulationError("unknown transmitter");
  const FrameId id = next_frame_++;
  auto shared = std::make_shared<Frame>(std::move(frame));
  if (shared->start == sim_.now()) {
    begin(id, std::move(shared), std::move(done));
  } else {
    const SimTime at = shared->start;
    sim_.schedule(at, [this, id, shared, done = std::move(done)]() mutable {
      begin(id, std::move(shared), std::move(done));
    });
  }
  return id;
}

void Medium::begin(FrameId id, std::shared_ptr<Frame> frame, Completion done) {
  prune(frame->channel, frame->transmitter);
  const SimTime end = frame->end();
  on_air_[frame->channel].push_back(OnAir{id, frame->transmitter, frame->start, end});
  own_tx_[frame->transmitter].push_back(OnAir{id, frame->transmitter, frame->start, end});
  auto& r = receivers_[frame->transmitter];
  if (end > r.busy_until) r.busy_until = end;

  auto& t = tallies_[frame->transmitter];
  if (frame->retransmission) {
    ++t.tx_retransmission;
  } else {
    ++t.tx_original;
  }
  ++frames_transmitted_;

  std::size_t log_index = log_.size();
  if (config_.keep_frame_log) {
    log_.push_back(FrameRecord{id, frame->transmitter, frame->destination, frame->channel,
                               frame->kind, frame->length_bytes, frame->start, frame->airtime(),
                               frame->retransmission, 0});
  }
  for (const auto& observer : observers_) observer(*frame);

  sim_.schedule(end + config_.propagation_delay,
                [this, id, frame = std::move(frame), done = std::move(done), log_index]() mutable {
                  const std::uint32_t delivered = finish(id, frame, std::move(done));
                  if (config_.keep_frame_log) log_[log_index].delivered = delivered;
                });
}

std::uint32_t Medium::finish(FrameId id, const std::shared_ptr<Frame>& frame, Completion done) {
  const SimTime start = frame->start;
  const SimTime end = frame->end();
  const double loss = frame->kind == FrameKind::kMeshAdv ? config_.adv_loss_probability
                                                         : config_.dot154_loss_probability;
  std::vector<ReceptionOutcome> outcomes;
  std::vector<NodeId> delivered;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (!visibility_.visible(frame->transmitter, v)) continue;
    Reception result = Reception::kDelivered;
    if (!listens_throughout(v, frame->channel, start, end) || transmitting_during(v, start, end)) {
      result = Reception::kNotListening;
    } else {
      for (const auto& g : on_air_[frame->channel]) {
        if (g.id == id || g.transmitter == v) continue;
        if (g.start < end && start < g.end && interferes(g.transmitter, v)) {
          result = Reception::kCollided;
          break;
        }
      }
    }
    if (result == Reception::kDelivered && frame->destination != kBroadcastNode &&
        frame->destination != v) {
      result = Reception::kFiltered;
    }
    if (result == Reception::kDelivered && loss > 0.0 && loss_rng_.bernoulli(loss)) {
      result = Reception::kLost;
    }
    outcomes.push_back(ReceptionOutcome{v, result});
    if (result == Reception::kDelivered) delivered.push_back(v);
  }
  for (NodeId v : delivered) {
    ++tallies_[v].rx;
    ++frames_delivered_;
    if (handlers_[v]) handlers_[v](*frame);
  }
  if (done) done(*frame, outcomes);
  return static_cast<std::uint32_t>(delivered.size());
}

void Medium::prune(ChannelId channel, NodeId transmitter) {
  const SimTime now = sim_.now();
  auto drop_old = [now](std::deque<OnAir>& q) {
    while (!q.empty() && q.front().end + kRetention < now) q.pop_front();
  };
  drop_old(on_air_[channel]);
  drop_old(own_tx_[transmitter]);
}

}  // namespace btsim
