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

#include "btsim/harness/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "btsim/sim/error.hpp"

namespace btsim::harness {
namespace {

constexpr std::string_view kArrivalsHeader =
    "producer,seq,consumer,t_start_us,t_arrival_us,delivered";
constexpr std::string_view kTrafficHeader = "node,tx_original,tx_retx,rx";
constexpr std::string_view kCdfHeader = "latency_us,cumulative_fraction";

std::vector<std::uint64_t> parse_row(const std::string& line, std::size_t columns,
                                     std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::string_view rest(line);
  if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view cell = rest.substr(0, comma);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad field '" +
                        std::string(cell) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != columns) {
    throw ConfigError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(columns) + " fields");
  }
  return out;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ConfigError("unexpected CSV header '" + line + "'");
}

}  // namespace

void write_arrivals_csv(std::ostream& out, const std::vector<ArrivalRecord>& records) {
  out << kArrivalsHeader << '\n';
  for (const auto& r : records) {
    out << r.producer << ',' << r.seq << ',' << r.consumer << ',' << r.t_start << ','
        << (r.delivered ? r.t_arrival : 0) << ',' << (r.delivered ? 1 : 0) << '\n';
  }
}

void write_traffic_csv(std::ostream& out, const std::vector<TrafficRecord>& traffic) {
  out << kTrafficHeader << '\n';
  for (const auto& t : traffic) {
    out << t.node << ',' << t.tx_original << ',' << t.tx_retx << ',' << t.rx << '\n';
  }
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf) {
  out << kCdfHeader << '\n';
  char buf[32];
  for (const auto& p : cdf) {
    std::snprintf(buf, sizeof buf, "%.6f", p.cumulative_fraction);
    out << p.latency << ',' << buf << '\n';
  }
}

std::vector<ArrivalRecord> read_arrivals_csv(std::istream& in) {
  expect_header(in, kArrivalsHeader);
  std::vector<ArrivalRecord> out;
  std::string line;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto f = parse_row(line, 6, n);
    if (f[5] > 1) throw ConfigError("line " + std::to_string(n) + ": delivered must be 0 or 1");
    out.push_back({static_cast<NodeId>(f[0]), f[1], static_cast<NodeId>(f[2]), f[3], f[4],
                   f[5] == 1});
  }
  return out;
}

std::vector<TrafficRecord> read_traffic_csv(std::istream& in) {
  expect_header(in, kTrafficHeader);
  std::vector<TrafficRecord> out;
  std::string line;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const auto f = parse_row(line, 4, n);
    out.push_back({static_cast<NodeId>(f[0]), f[1], f[2], f[3]});
  }
  return out;
}

}  // namespace btsim::harness
