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

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "btsim/sim/frame.hpp"
#include "btsim/sim/random.hpp"
#include "btsim/sim/simulator.hpp"
#include "btsim/sim/topology.hpp"

namespace btsim {

enum class Reception : std::uint8_t {
  kDelivered,
  kCollided,
  kNotListening,  // off-channel, radio off or busy transmitting
  kFiltered,      // decoded but addressed to another node
  kLost,          // independent random loss
};

struct ReceptionOutcome {
  NodeId node;
  Reception result;
};

struct FrameRecord {
  FrameId id;
  NodeId transmitter;
  NodeId destination;
  ChannelId channel;
  FrameKind kind;
  std::uint32_t length_bytes;
  SimTime start;
  Duration airtime;
  bool retransmission;
  std::uint32_t delivered;
};

struct NodeTally {
  std::uint64_t tx_original = 0;
  std::uint64_t tx_retransmission = 0;
  std::uint64_t rx = 0;
};

struct MediumConfig {
  // Independent per-receiver frame loss, per link personality.
  double adv_loss_probability = 0.0;
  double dot154_loss_probability = 0.0;
  Duration propagation_delay = 0;
  bool keep_frame_log = true;
};

// Shared radio medium. A visible receiver decodes a frame iff it listens on
// the frame's channel for the whole airtime with its radio on while idle.
// Any overlapping frame on that channel from an interfering transmitter
// destroys the reception.
class Medium {
 public:
  using ReceiveHandler = std::function<void(const Frame&)>;
  using Completion = std::function<void(const Frame&, const std::vector<ReceptionOutcome>&)>;
  using FrameObserver = std::function<void(const Frame&)>;

  Medium(Simulator& sim, TopologyMatrix visibility, MediumConfig config, std::uint64_t seed);

  std::size_t node_count() const { return visibility_.size(); }
  const TopologyMatrix& visibility() const { return visibility_; }

  // Extra interferers beyond visibility; the effective interference relation
  // is visibility united with this matrix.
  void set_interference(const TopologyMatrix& extra);

  void set_receive_handler(NodeId node, ReceiveHandler handler);
  void add_frame_observer(FrameObserver observer) { observers_.push_back(std::move(observer)); }

  // Listening channel control.
  void set_fixed_channel(NodeId node, ChannelId channel);
  // Cycles 37 -> 38 -> 39 with the given dwell; phase drawn from the node's
  // seeded stream. window == 0 or kNever disables rotation.
  void set_scan_rotation(NodeId node, Duration window);
  void set_scan_rotation(NodeId node, Duration window, Duration phase);
  std::optional<ChannelId> listening_channel(NodeId node, SimTime at) const;
  Duration scan_phase(NodeId node) const { return receivers_[node].phase; }

  void set_radio_enabled(NodeId node, bool enabled);
  bool radio_enabled(NodeId node) const { return receivers_[node].radio_on; }
  SimTime busy_until(NodeId node) const { return receivers_[node].busy_until; }

  // Puts `frame` on the air at frame.start (>= now). Outcomes are resolved at
  // the end of the airtime; `done` receives one outcome per visible node.
  FrameId transmit(Frame frame, Completion done = {});

  // True if a frame from a transmitter interfering at `node` occupies
  // `channel` anywhere in [from, to].
  bool channel_busy(NodeId node, ChannelId channel, SimTime from, SimTime to) const;

  const std::vector<FrameRecord>& frame_log() const { return log_; }
  std::uint64_t frames_transmitted() const { return frames_transmitted_; }
  std::uint64_t frames_delivered() const { return frames_delivered_; }
  const NodeTally& tally(NodeId node) const { return tallies_[node]; }
  const std::vector<NodeTally>& tallies() const { return tallies_; }

 private:
  struct ReceiverState {
    bool rotating = false;
    Duration window = 0;
    Duration phase = 0;
    ChannelId fixed = kAdvertisingChannels[0];
    bool radio_on = true;
    SimTime last_radio_toggle = 0;
    SimTime busy_until = 0;
  };
  struct OnAir {
    FrameId id;
    NodeId transmitter;
    SimTime start;
    SimTime end;
  };

  bool interferes(NodeId transmitter, NodeId receiver) const;
  bool listens_throughout(NodeId node, ChannelId channel, SimTime from, SimTime to) const;
  bool transmitting_during(NodeId node, SimTime from, SimTime to) const;
  void begin(FrameId id, std::shared_ptr<Frame> frame, Completion done);
  std::uint32_t finish(FrameId id, const std::shared_ptr<Frame>& frame, Completion done);
  void prune(ChannelId channel, NodeId transmitter);

  Simulator& sim_;
  TopologyMatrix visibility_;
  TopologyMatrix interference_;
  MediumConfig config_;
  std::uint64_t seed_;
  Rng loss_rng_;
  std::vector<ReceiverState> receivers_;
  std::vector<ReceiveHandler> handlers_;
  std::vector<FrameObserver> observers_;
  std::array<std::deque<OnAir>, 256> on_air_{};
  std::vector<std::deque<OnAir>> own_tx_;
  std::vector<FrameRecord> log_;
  std::vector<NodeTally> tallies_;
  std::uint64_t frames_transmitted_ = 0;
  std::uint64_t frames_delivered_ = 0;
  FrameId next_frame_ = 1;
};

}  // namespace btsim
