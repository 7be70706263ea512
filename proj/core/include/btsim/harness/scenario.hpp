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
#include <vector>

#include "btsim/harness/config.hpp"
#include "btsim/harness/metrics.hpp"
#include "btsim/ndn/forwarder.hpp"
#include "btsim/sim/medium.hpp"

namespace btsim::harness {

struct RunResult {
  ScenarioConfig config;  // resolved
  std::vector<ArrivalRecord> arrivals;
  std::vector<TrafficRecord> traffic;
  std::vector<FrameRecord> frame_log;
  std::uint64_t frames_transmitted = 0;
  std::uint64_t frames_delivered = 0;
  std::uint64_t events_executed = 0;
  std::uint64_t trace_digest = 0;
  // Some items were neither delivered nor given up when the limit hit.
  bool truncated = false;
  // BT mesh: relayed PDUs per node and per (node, source) pair.
  std::vector<std::uint64_t> relayed_pdus;
  std::vector<std::vector<std::uint64_t>> relayed_by_source;
  std::vector<ndn::ForwarderStats> ndn_stats;
};

// Cumulative publish instants for `producer`: each gap is
// interval + U[-jitter, +jitter] drawn from the producer's stream.
std::vector<SimTime> publish_schedule(const ScenarioConfig& resolved, NodeId producer);

// Dispatches on cfg.pattern. `cfg` need not be resolved.
RunResult run_scenario(const ScenarioConfig& cfg);
RunResult run_many_to_one(const ScenarioConfig& cfg);
RunResult run_one_to_many(const ScenarioConfig& cfg);

}  // namespace btsim::harness
