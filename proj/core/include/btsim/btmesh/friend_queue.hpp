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
#include <deque>
#include <vector>

#include "btsim/btmesh/pdu.hpp"
#include "btsim/sim/types.hpp"

namespace btsim::btmesh {

// Per-LPN message queue kept by a friend node. Entries leave the queue on
// their first retrieval.
class FriendQueue {
 public:
  FriendQueue(NodeId friend_node, NodeId lpn, std::size_t capacity);

  NodeId friend_node() const { return friend_; }
  NodeId lpn() const { return lpn_; }
  std::size_t size() const { return queue_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return queue_.empty(); }

  // Returns true if the oldest entry was evicted to make room.
  bool push(MeshNetworkPdu pdu);
  // Removes and returns every entry, oldest first.
  std::vector<MeshNetworkPdu> drain();

 private:
  NodeId friend_;
  NodeId lpn_;
  std::size_t capacity_;
  std::deque<MeshNetworkPdu> queue_;
};

}  // namespace btsim::btmesh
