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

#include "btsim/btmesh/address.hpp"

#include <cstdio>

#include "btsim/sim/error.hpp"

namespace btsim::btmesh {

MeshAddress MeshAddress::unicast(std::uint16_t value) {
  if (value == 0 || value >= 0x8000) throw ConfigError("not a unicast mesh address");
  return MeshAddress(value);
}

MeshAddress MeshAddress::group(std::uint16_t value) {
  if (value < 0xC000) throw ConfigError("not a group mesh address");
  return MeshAddress(value);
}

MeshAddress MeshAddress::virtual_address(std::uint16_t value) {
  if (value < 0x8000 || value >= 0xC000) throw ConfigError("not a virtual mesh address");
  return MeshAddress(value);
}

MeshAddress MeshAddress::for_node(NodeId node) {
  if (node >= 0x7FFF) throw ConfigError("node id exceeds unicast address space");
  return MeshAddress(static_cast<std::uint16_t>(node + 1));
}

std::string MeshAddress::to_string() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%04X", value_);
  return buf;
}

}  // namespace btsim::btmesh
