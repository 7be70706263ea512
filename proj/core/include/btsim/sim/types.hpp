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

namespace btsim {

using NodeId = std::uint32_t;
using ChannelId = std::uint8_t;
using FrameId = std::uint64_t;

inline constexpr NodeId kBroadcastNode = 0xFFFFFFFFu;

// BLE primary advertising channels, in transmission order.
inline constexpr std::array<ChannelId, 3> kAdvertisingChannels{37, 38, 39};
inline constexpr ChannelId kDot154Channel = 26;

}  // namespace btsim
