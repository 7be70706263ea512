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

#include "btsim/ndn/network.hpp"

namespace btsim::ndn {
namespace {

constexpr std::uint64_t kMacStream = 0x15f4;
constexpr std::uint64_t kForwarderStream = 0x1c4;

}  // namespace

NdnNetwork::NdnNetwork(Simulator& sim, Medium& medium, NdnNetworkConfig config,
                       std::uint64_t seed)
    : medium_(medium) {
  const std::size_t n = medium.node_count();
  for (NodeId id = 0; id < n; ++id) {
    macs_.push_back(std::make_unique<CsmaMac>(sim, medium, id, config.mac,
                                              Rng::derive(seed, {kMacStream, id})));
    forwarders_.push_back(std::make_unique<Forwarder>(
        sim, *macs_.back(), config.forwarder, Rng::derive(seed, {kForwarderStream, id})));
    medium.set_fixed_channel(id, kDot154Channel);
    CsmaMac* mac = macs_.back().get();
    medium.set_receive_handler(id, [mac](const Frame& f) { mac->on_frame(f); });
    for (NodeId nb : medium.visibility().neighbors(id)) forwarders_.back()->add_unicast_face(nb);
    if (config.broadcast_face) forwarders_.back()->add_broadcast_face();
  }
}

void NdnNetwork::route_to(const Name& prefix, NodeId producer) {
  const TopologyMatrix& topo = medium_.visibility();
  for (NodeId id = 0; id < forwarders_.size(); ++id) {
    if (id == producer) continue;
    const NodeId hop = topo.next_hop(id, producer);
    if (hop == kBroadcastNode) continue;
    Forwarder& f = *forwarders_[id];
    f.add_route(prefix, *f.face_to(hop));
  }
}

void NdnNetwork::set_availability(const CsmaMac::Availability& gate) {
  for (auto& mac : macs_) mac->set_availability(gate);
}

}  // namespace btsim::ndn
