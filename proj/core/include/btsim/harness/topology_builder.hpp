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

#include <vector>

#include "btsim/harness/config.hpp"
#include "btsim/sim/topology.hpp"

namespace btsim::harness {

// Throws ConfigError for n < 2.
TopologyMatrix build_topology(TopologyKind kind, std::size_t n);

struct Roles {
  std::vector<NodeId> producers;
  std::vector<NodeId> consumers;
};

// Many-to-one: node 0 consumes, every other node produces. One-to-many:
// node 0 produces, every other node consumes. On a line node 0 is an end.
Roles roles_for(Pattern pattern, std::size_t n);

}  // namespace btsim::harness
