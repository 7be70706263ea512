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

#include "btsim/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "btsim/sim/error.hpp"

namespace btsim::harness {

std::vector<Duration> delivered_latencies(const std::vector<ArrivalRecord>& records) {
  std::vector<Duration> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (r.delivered) out.push_back(r.latency());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CdfPoint> compute_cdf(const std::vector<ArrivalRecord>& records) {
  const std::vector<Duration> lat = delivered_latencies(records);
  if (lat.empty()) throw SimulationError("CDF undefined without delivered records");
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (i + 1 < lat.size() && lat[i + 1] == lat[i]) continue;
    cdf.push_back({lat[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

double success_rate(const std::vector<ArrivalRecord>& records) {
  if (records.empty()) return 0.0;
  const auto ok = std::count_if(records.begin(), records.end(),
                                [](const ArrivalRecord& r) { return r.delivered; });
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

std::optional<Duration> percentile(const std::vector<Duration>& sorted, double p) {
  if (sorted.empty()) return std::nullopt;
  const double rank = std::ceil(p / 100.0 * static_cast<double>(sorted.size()));
  const std::size_t idx = rank < 1 ? 0 : static_cast<std::size_t>(rank) - 1;
  return sorted[std::min(idx, sorted.size() - 1)];
}

double fraction_within(const std::vector<ArrivalRecord>& records, Duration limit) {
  if (records.empty()) return 0.0;
  const auto ok = std::count_if(records.begin(), records.end(), [limit](const ArrivalRecord& r) {
    return r.delivered && r.latency() <= limit;
  });
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

std::optional<double> cdf_linearity(const std::vector<CdfPoint>& cdf, Duration lo, Duration hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : cdf) {
    if (p.latency >= lo && p.latency <= hi) {
      pts.emplace_back(static_cast<double>(p.latency), p.cumulative_fraction);
    }
  }
  if (pts.size() < 3) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<TrafficRecord> traffic_from(const std::vector<NodeTally>& tallies) {
  std::vector<TrafficRecord> out;
  out.reserve(tallies.size());
  for (NodeId id = 0; id < tallies.size(); ++id) {
    out.push_back({id, tallies[id].tx_original, tallies[id].tx_retransmission, tallies[id].rx});
  }
  return out;
}

std::uint64_t total_tx(const std::vector<TrafficRecord>& traffic) {
  std::uint64_t sum = 0;
  for (const auto& t : traffic) sum += t.tx_total();
  return sum;
}

std::uint64_t total_rx(const std::vector<TrafficRecord>& traffic) {
  std::uint64_t sum = 0;
  for (const auto& t : traffic) sum += t.rx;
  return sum;
}

}  // namespace btsim::harness
