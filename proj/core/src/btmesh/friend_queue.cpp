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

#include "btsim/btmesh/friend_queue.hpp"

#include "btsim/sim/error.hpp"

namespace btsim::btmesh {

FriendQueue::FriendQueue(NodeId friend_node, NodeId lpn, std::size_t capacity)
    : friend_(friend_node), lpn_(lpn), capacity_(capacity) {
  if (capacity == 0) throw ConfigError("friend queue capacity must be positive");
}

bool FriendQueue::push(MeshNetworkPdu pdu) {
  bool evicted = false;
  if (queue_.size() == capacity_) {
    queue_.pop_front();
    evicted = true;
  }
  queue_.push_back(std::move(pdu));
  return evicted;
}

std::vector<MeshNetworkPdu> FriendQueue::drain() {
  std::vector<MeshNetworkPdu> out(std::make_move_iterator(queue_.begin()),
                                  std::make_move_iterator(queue_.end()));
  queue_.clear();
  return out;
}

}  // namespace btsim::btmesh
