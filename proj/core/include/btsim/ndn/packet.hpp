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
#include <variant>
#include <vector>

#include "btsim/ndn/name.hpp"
#include "btsim/sim/time.hpp"

namespace btsim::ndn {

struct Interest {
  Name name;
  std::uint32_t nonce = 0;
  Duration lifetime = sec(10);

  // Outer TLV (2) + Name + Nonce (6) + InterestLifetime (4).
  std::size_t wire_size() const { return 2 + name.tlv_size() + 6 + 4; }
};

struct Data {
  Name name;
  std::vector<std::uint8_t> payload;

  // Outer TLV (2) + Name + Content (2 + payload) + SignatureInfo (5).
  std::size_t wire_size() const { return 2 + name.tlv_size() + 2 + payload.size() + 5; }
};

using Packet = std::variant<Interest, Data>;

}  // namespace btsim::ndn
