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

#include <compare>
#include <cstdint>
#include <string>

#include "btsim/sim/types.hpp"

namespace btsim::btmesh {

enum class AddressKind : std::uint8_t { kUnassigned, kUnicast, kGroup, kVirtual };

// 16-bit mesh address. The kind follows from the value range:
// 0x0000 unassigned, 0x0001-0x7FFF unicast, 0x8000-0xBFFF virtual,
// 0xC000-0xFFFF group.
class MeshAddress {
 public:
  constexpr MeshAddress() = default;
  constexpr explicit MeshAddress(std::uint16_t value) : value_(value) {}

  static MeshAddress unicast(std::uint16_t value);
  static MeshAddress group(std::uint16_t value);
  static MeshAddress virtual_address(std::uint16_t value);
  // Unicast address provisioned for a simulator node (node id + 1).
  static MeshAddress for_node(NodeId node);

  constexpr std::uint16_t value() const { return value_; }
  constexpr AddressKind kind() const {
    if (value_ == 0) return AddressKind::kUnassigned;
    if (value_ < 0x8000) return AddressKind::kUnicast;
    if (value_ < 0xC000) return AddressKind::kVirtual;
    return AddressKind::kGroup;
  }
  constexpr bool is_unicast() const { return kind() == AddressKind::kUnicast; }

  std::string to_string() const;

  friend constexpr auto operator<=>(MeshAddress, MeshAddress) = default;

 private:
  std::uint16_t value_ = 0;
};

inline constexpr MeshAddress kAllNodes{0xFFFF};
inline constexpr MeshAddress kAllRelays{0xFFFE};

}  // namespace btsim::btmesh
