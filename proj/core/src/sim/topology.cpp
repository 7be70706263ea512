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

#include "btsim/sim/topology.hpp"

#include <cstdint>
#include <deque>
#include <limits>

#include "btsim/sim/error.hpp"

namespace btsim {

TopologyMatrix::TopologyMatrix(std::size_t node_count)
    : n_(node_count), bits_(node_count * node_count, false) {}

TopologyMatrix TopologyMatrix::full_mesh(std::size_t n) {
  TopologyMatrix m(n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) m.connect(a, b);
  }
  return m;
}

TopologyMatrix TopologyMatrix::line(std::size_t n) {
  TopologyMatrix m(n);
  for (NodeId a = 0; a + 1 < n; ++a) m.connect(a, a + 1);
  return m;
}

void TopologyMatrix::connect(NodeId a, NodeId b) {
  if (a >= n_ || b >= n_) throw ConfigError("topology link references unknown node");
  if (a == b) return;
  bits_[a * n_ + b] = true;
  bits_[b * n_ + a] = true;
}

void TopologyMatrix::disconnect(NodeId a, NodeId b) {
  if (a >= n_ || b >= n_) return;
  bits_[a * n_ + b] = false;
  bits_[b * n_ + a] = false;
}

std::vector<NodeId> TopologyMatrix::neighbors(NodeId a) const {
  std::vector<NodeId> out;
  for (NodeId b = 0; b < n_; ++b) {
    if (visible(a, b)) out.push_back(b);
  }
  return out;
}

std::size_t TopologyMatrix::pair_count() const { return pairs().size(); }

std::vector<std::pair<NodeId, NodeId>> TopologyMatrix::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId a = 0; a < n_; ++a) {
    for (NodeId b = a + 1; b < n_; ++b) {
      if (visible(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

TopologyMatrix TopologyMatrix::united(const TopologyMatrix& other) const {
  if (other.n_ != n_) throw ConfigError("interference matrix size differs from topology");
  TopologyMatrix m(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) m.bits_[i] = bits_[i] || other.bits_[i];
  return m;
}

std::vector<std::size_t> TopologyMatrix::hop_distances(NodeId from) const {
  std::vector<std::size_t> dist(n_, std::numeric_limits<std::size_t>::max());
  if (from >= n_) return dist;
  std::deque<NodeId> frontier{from};
  dist[from] = 0;
  while (!frontier.empty()) {
    const NodeId a = frontier.front();
    frontier.pop_front();
    for (NodeId b = 0; b < n_; ++b) {
      if (visible(a, b) && dist[b] == std::numeric_limits<std::size_t>::max()) {
        dist[b] = dist[a] + 1;
        frontier.push_back(b);
      }
    }
  }
  return dist;
}

NodeId TopologyMatrix::next_hop(NodeId from, NodeId to) const {
  if (from == to || from >= n_ || to >= n_) return kBroadcastNode;
  const auto dist = hop_distances(to);
  if (dist[from] == std::numeric_limits<std::size_t>::max()) return kBroadcastNode;
  for (NodeId b = 0; b < n_; ++b) {
    if (visible(from, b) && dist[b] + 1 == dist[from]) return b;
  }
  return kBroadcastNode;
}

bool TopologyMatrix::connected() const {
  if (n_ == 0) return true;
  for (std::size_t d : hop_distances(0)) {
    if (d == std::numeric_limits<std::size_t>::max()) return false;
  }
  return true;
}

}  // namespace btsim
