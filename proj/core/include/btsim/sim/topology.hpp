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
#include <utility>
#include <vector>

#include "btsim/sim/types.hpp"

namespace btsim {

// Symmetric, irreflexive visibility relation over nodes 0..n-1.
class TopologyMatrix {
 public:
  TopologyMatrix() = default;
  explicit TopologyMatrix(std::size_t node_count);

  static TopologyMatrix full_mesh(std::size_t n);
  static TopologyMatrix line(std::size_t n);

  std::size_t size() const { return n_; }

  // Self-links are ignored.
  void connect(NodeId a, NodeId b);
  void disconnect(NodeId a, NodeId b);
  bool visible(NodeId a, NodeId b) const {
    return a < n_ && b < n_ && bits_[a * n_ + b];
  }

  std::vector<NodeId> neighbors(NodeId a) const;
  std::size_t pair_count() const;
  std::vector<std::pair<NodeId, NodeId>> pairs() const;

  // Union of two relations of equal size.
  TopologyMatrix united(const TopologyMatrix& other) const;

  // Hop distance from `from` to every node; unreachable nodes get SIZE_MAX.
  std::vector<std::size_t> hop_distances(NodeId from) const;
  // Next hop on a shortest path from `from` toward `to` (lowest id on ties).
  // Returns kBroadcastNode when unreachable or from == to.
  NodeId next_hop(NodeId from, NodeId to) const;
  bool connected() const;

 private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

}  // namespace btsim
