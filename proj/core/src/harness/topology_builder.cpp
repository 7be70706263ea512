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

#include "btsim/harness/topology_builder.hpp"

#include "btsim/sim/error.hpp"

namespace btsim::harness {

TopologyMatrix build_topology(TopologyKind kind, std::size_t n) {
  if (n < 2) throw ConfigError("topologies need at least 2 nodes");
  switch (kind) {
    case TopologyKind::kFullMesh:
      return TopologyMatrix::full_mesh(n);
    case TopologyKind::kLine:
      return TopologyMatrix::line(n);
  }
  throw ConfigError("unknown topology kind");
}

Roles roles_for(Pattern pattern, std::size_t n) {
  Roles r;
  std::vector<NodeId> others;
  for (NodeId id = 1; id < n; ++id) others.push_back(id);
  if (pattern == Pattern::kManyToOne) {
    r.consumers = {0};
    r.producers = std::move(others);
  } else {
    r.producers = {0};
    r.consumers = std::move(others);
  }
  return r;
}

}  // namespace btsim::harness
