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
#include <memory>
#include <vector>

#include "btsim/ndn/forwarder.hpp"
#include "btsim/sim/csma_mac.hpp"
#include "btsim/sim/medium.hpp"
#include "btsim/sim/simulator.hpp"
#include "btsim/sim/topology.hpp"

namespace btsim::ndn {

struct NdnNetworkConfig {
  CsmaConfig mac;
  ForwarderConfig forwarder;
  bool broadcast_face = false;
};

// One forwarder per medium node, each on its own CSMA MAC listening on the
// 802.15.4 channel, with a unicast face per visible neighbor.
class NdnNetwork {
 public:
  NdnNetwork(Simulator& sim, Medium& medium, NdnNetworkConfig config, std::uint64_t seed);
  NdnNetwork(const NdnNetwork&) = delete;
  NdnNetwork& operator=(const NdnNetwork&) = delete;

  std::size_t size() const { return forwarders_.size(); }
  Forwarder& node(NodeId id) { return *forwarders_.at(id); }
  const Forwarder& node(NodeId id) const { return *forwarders_.at(id); }
  CsmaMac& mac(NodeId id) { return *macs_.at(id); }

  // Installs a route for `prefix` on every other node along the shortest
  // path toward `producer`.
  void route_to(const Name& prefix, NodeId producer);

  // Applies the same availability gate to every MAC.
  void set_availability(const CsmaMac::Availability& gate);

 private:
  Medium& medium_;
  std::vector<std::unique_ptr<CsmaMac>> macs_;
  std::vector<std::unique_ptr<Forwarder>> forwarders_;
};

}  // namespace btsim::ndn
