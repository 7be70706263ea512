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

#include "btsim/sim/types.hpp"

namespace btsim::ndn {

using FaceId = std::uint32_t;
inline constexpr FaceId kAppFace = 0;

enum class FaceKind : std::uint8_t { kApp, kUnicast, kBroadcast };

// A face leads to the local application or to a link-layer destination.
struct Face {
  FaceId id;
  FaceKind kind;
  NodeId neighbor = kBroadcastNode;
};

}  // namespace btsim::ndn
