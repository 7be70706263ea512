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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "btsim/btmesh/address.hpp"

namespace btsim::btmesh {

inline constexpr std::uint8_t kMaxTtl = 127;
inline constexpr std::uint32_t kMaxSeq = 0xFFFFFF;

// Network PDU header (9) + lower transport header (1) + TransMIC (4) +
// NetMIC (4). An unsegmented network PDU carries at most 29 bytes.
inline constexpr std::size_t kPduOverheadBytes = 18;
inline constexpr std::size_t kMaxNetworkPduBytes = 29;
inline constexpr std::size_t kMaxUnsegmentedPayload = kMaxNetworkPduBytes - kPduOverheadBytes;

struct MeshNetworkPdu {
  MeshAddress src;
  MeshAddress dst;
  std::uint8_t ttl = 0;
  std::uint32_t seq = 0;
  std::vector<std::uint8_t> payload;
  bool ack_required = false;

  std::size_t encoded_size() const { return kPduOverheadBytes + payload.size(); }
};

// Network message cache key.
struct PduKey {
  std::uint16_t src;
  std::uint32_t seq;
  bool operator==(const PduKey&) const = default;
};

inline PduKey key_of(const MeshNetworkPdu& pdu) { return PduKey{pdu.src.value(), pdu.seq}; }

struct PduKeyHash {
  std::size_t operator()(const PduKey& k) const {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.src) << 32) | k.seq);
  }
};

}  // namespace btsim::btmesh
