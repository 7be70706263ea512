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
#include <vector>

#include "btsim/sim/medium.hpp"
#include "btsim/sim/time.hpp"
#include "btsim/sim/types.hpp"

namespace btsim::harness {

struct ArrivalRecord {
  NodeId producer = 0;
  std::uint64_t seq = 0;
  NodeId consumer = 0;
  SimTime t_start = 0;
  SimTime t_arrival = 0;
  bool delivered = false;

  Duration latency() const { return t_arrival - t_start; }
  bool operator==(const ArrivalRecord&) const = default;
};

struct TrafficRecord {
  NodeId node = 0;
  std::uint64_t tx_original = 0;
  std::uint64_t tx_retx = 0;
  std::uint64_t rx = 0;

  std::uint64_t tx_total() const { return tx_original + tx_retx; }
  bool operator==(const TrafficRecord&) const = default;
};

struct CdfPoint {
  Duration latency;
  double cumulative_fraction;
};

// Empirical CDF over delivered records, one point per distinct latency.
// Throws SimulationError when nothing was delivered.
std::vector<CdfPoint> compute_cdf(const std::vector<ArrivalRecord>& records);

double success_rate(const std::vector<ArrivalRecord>& records);
// Ascending latencies of delivered records.
std::vector<Duration> delivered_latencies(const std::vector<ArrivalRecord>& records);
// Nearest-rank percentile, p in (0, 100]; nullopt for an empty sample.
std::optional<Duration> percentile(const std::vector<Duration>& sorted, double p);
// Share of all records (delivered or not) delivered within `limit`.
double fraction_within(const std::vector<ArrivalRecord>& records, Duration limit);
// Pearson correlation of CDF fraction against latency for points in [lo, hi].
std::optional<double> cdf_linearity(const std::vector<CdfPoint>& cdf, Duration lo, Duration hi);

std::vector<TrafficRecord> traffic_from(const std::vector<NodeTally>& tallies);
std::uint64_t total_tx(const std::vector<TrafficRecord>& traffic);
std::uint64_t total_rx(const std::vector<TrafficRecord>& traffic);

}  // namespace btsim::harness
