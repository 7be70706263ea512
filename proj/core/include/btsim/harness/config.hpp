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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "btsim/bticn/bticn.hpp"
#include "btsim/btmesh/mesh_network.hpp"
#include "btsim/ndn/network.hpp"
#include "btsim/sim/medium.hpp"

namespace btsim::harness {

enum class Stack : std::uint8_t { kBtMesh, kNdn, kBtIcn };
enum class TopologyKind : std::uint8_t { kFullMesh, kLine };
enum class Pattern : std::uint8_t { kManyToOne, kOneToMany };
// Which node pairs corrupt each other's frames: only visible pairs, or every
// pair as on a shared desk where visibility is enforced by address filters.
enum class Interference : std::uint8_t { kTopology, kFullMesh };

std::string to_string(Stack s);
std::string to_string(TopologyKind t);
std::string to_string(Pattern p);
std::string to_string(Interference i);

struct ScenarioConfig {
  std::string name;
  Stack stack = Stack::kBtMesh;
  TopologyKind topology = TopologyKind::kFullMesh;
  std::size_t nodes = 10;
  Pattern pattern = Pattern::kManyToOne;
  Interference interference = Interference::kFullMesh;
  unsigned items_per_producer = 100;
  // Unset values take the per-pattern defaults in resolved().
  std::optional<Duration> publish_interval;
  std::optional<Duration> publish_jitter;
  // Per-consumer request offset U[0, consumer_jitter] for one-to-many NDN.
  Duration consumer_jitter = msec(200);
  std::size_t payload_bytes = 8;
  std::uint64_t seed = 1;
  std::optional<SimTime> duration_limit;

  MediumConfig medium;
  btmesh::MeshConfig mesh;
  // Unset: 10 on line topologies, mesh.default_ttl otherwise.
  std::optional<unsigned> mesh_ttl;
  ndn::NdnNetworkConfig ndn;
  bticn::BtIcnConfig bticn;

  // Copy with every default filled in. Throws ConfigError when invalid.
  ScenarioConfig resolved() const;
  // "<stack>_<topology>_<pattern>"
  std::string label() const;
  // Run directory name, "<name>_seed<seed>".
  std::string run_id() const;
};

// Parses one scenario object. Unknown keys are rejected.
ScenarioConfig parse_scenario(std::string_view json_text);
// Pretty-printed JSON of every field of `cfg`; durations in microseconds.
std::string to_json_string(const ScenarioConfig& cfg);

// Accepts plain microsecond integers or strings with a us/ms/s suffix.
Duration parse_duration(std::string_view text);

struct BatchConfig {
  std::vector<ScenarioConfig> scenarios;
  std::vector<std::uint64_t> seeds;
  unsigned jobs = 1;
};

// Either a single scenario object or
// {"defaults": {...}, "scenarios": [{...}], "seeds": [...], "jobs": N}.
BatchConfig parse_batch(std::string_view json_text);
BatchConfig load_batch_file(const std::string& path);

// 2 stacks x 2 topologies x 2 patterns on 10 nodes with consumer-only
// Interest retransmission.
std::vector<ScenarioConfig> evaluation_grid();

std::string read_text_file(const std::string& path);

}  // namespace btsim::harness
