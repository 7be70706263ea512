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

#include "btsim/sim/time.hpp"
#include "btsim/sim/types.hpp"

namespace btsim {

enum class FrameKind : std::uint8_t { kMeshAdv, kDot154Data, kDot154Ack };

// Bit rates: BLE advertising 1 Mbit/s, IEEE 802.15.4 O-QPSK 250 kbit/s.
inline constexpr std::uint64_t kBleBitrate = 1'000'000;
inline constexpr std::uint64_t kDot154Bitrate = 250'000;

constexpr std::uint64_t bitrate_of(FrameKind kind) {
  return kind == FrameKind::kMeshAdv ? kBleBitrate : kDot154Bitrate;
}

// Airtime in microseconds for `length_bytes` on a link of the given kind.
constexpr Duration airtime_of(FrameKind kind, std::uint32_t length_bytes) {
  return static_cast<Duration>(length_bytes) * 8 * 1'000'000 / bitrate_of(kind);
}

// One on-air transmission.
struct Frame {
  NodeId transmitter = 0;
  NodeId destination = kBroadcastNode;  // link-layer address filter
  ChannelId channel = kAdvertisingChannels[0];
  FrameKind kind = FrameKind::kMeshAdv;
  std::uint32_t length_bytes = 0;
  SimTime start = 0;
  bool retransmission = false;
  std::uint8_t sequence = 0;  // 802.15.4 DSN; ignored for advertisements
  std::any payload;

  Duration airtime() const { return airtime_of(kind, length_bytes); }
  SimTime end() const { return start + airtime(); }
};

}  // namespace btsim
